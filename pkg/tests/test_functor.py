from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from twistcoef import sigma as sg
from twistcoef.families import constant_functor, from_spec, partition_functor
from twistcoef.functor import (FunctorError, cross_effect_paths_agree, decompose, degree, delta, direct_sum, height,
                               tensor, verify_lemma_suite, zero_functor)
from twistcoef.linalg import FgAbGroup

P1 = partition_functor((1,), "Z", 4)
P11 = partition_functor((1, 1), "Z", 4)


@st.composite
def composable_pairs(draw, bound=4):
    l, m, n = (draw(st.integers(0, bound)) for _ in range(3))

    def morph(a, b):
        k = draw(st.integers(0, min(a, b)))
        dom = draw(st.permutations(range(1, a + 1)))[:k]
        img = draw(st.permutations(range(1, b + 1)))[:k]
        return sg.make(a, b, dict(zip(dom, img)))

    return morph(l, m), morph(m, n)


@settings(max_examples=40)
@given(composable_pairs())
def test_functoriality_on_random_pairs(fg):
    f, g = fg
    for T in (P1, P11):
        assert T.map(sg.compose(g, f)).equals(T.map(g) @ T.map(f))


def test_identity_and_forgetful_maps():
    assert P1.map(sg.identity(3)).matrix.is_identity()
    # forgetting a point of Z^n kills that coordinate
    f = P1.forget(3, {2})
    assert f.matrix.data == [[1, 0, 0], [0, 0, 0], [0, 0, 1]]


@pytest.mark.parametrize("spec,deg", [("const:Z", 0), ("partition:1", 1), ("partition:2", 2),
                                      ("partition:1,1", 2), ("partition:2,1", 3), ("partition:3", 3),
                                      ("partition:1,1,1", 3)])
def test_degree_of_library(spec, deg):
    d = degree(from_spec(spec, 5))
    assert d.determinate and d.value == deg


def test_degree_of_zero_functor():
    d = degree(zero_functor(3))
    assert d.determinate and d.value == -1


def test_degree_indeterminate_when_truncation_too_small():
    d = degree(from_spec("partition:1", 1))
    assert not d.determinate and d.value == 1
    # a truncation that misses the functor entirely reads as zero
    assert degree(from_spec("partition:2,1", 2)).value == -1


def test_delta_lowers_degree_by_one():
    for spec in ("partition:1", "partition:2", "partition:1,1", "kunneth:circle,q=2,Q"):
        T = from_spec(spec, 5)
        assert degree(delta(T)).value == degree(T).value - 1


def test_height_values():
    assert height(P1).value == 1
    assert height(constant_functor(FgAbGroup.free(1), 4)).value == 0
    assert height(P11).value == 2


def test_decomposition_ranks_for_p1():
    rep = decompose(P1, 3)
    assert rep.ok
    ranks = {tuple(sorted(Q)): ce.group.rank for Q, ce in rep.summands.items()}
    # Z^n splits as the n lines spanned by the basis vectors, one per singleton
    assert all(r == (1 if len(Q) == 1 else 0) for Q, r in ranks.items())


def test_decomposition_with_torsion():
    T = constant_functor(FgAbGroup.cyclic(2), 3)
    rep = decompose(T, 3)
    assert rep.ok
    assert rep.summands[frozenset()].group.invariants() == ((2,), 0)


@pytest.mark.parametrize("spec", ["partition:1,1", "partition:2", "kunneth:circle,q=2,Q", "interval:1/2"])
def test_cross_effect_paths_agree(spec):
    T = from_spec(spec, 4)
    for n in range(5):
        for k in range(n + 1):
            for Q in combinations(range(1, n + 1), k):
                assert cross_effect_paths_agree(T, n, [{q} for q in Q])


def test_lemma_suite_on_small_functor():
    rep = verify_lemma_suite(P11, bound=3, bijection_bound=4)
    assert rep.ok, rep.failures
    assert rep.checks["ses"] > 0 and rep.checks["bijection"] > 0


def test_direct_sum_and_tensor_degrees():
    S = direct_sum(P1, P11)
    assert S.check_functoriality(bound=3).ok
    assert degree(S).value == 2
    T = tensor(P1, P1)
    assert T.check_functoriality(bound=3).ok
    assert degree(T).value == 2
    assert T.ranks()[3] == 9


def test_truncate_and_errors():
    assert P1.truncate(2).N == 2
    with pytest.raises(FunctorError):
        decompose(P1, 9)
