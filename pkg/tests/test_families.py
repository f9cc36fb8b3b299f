from math import comb, factorial, prod

import pytest

from twistcoef.families import (LIBRARY, FamilyError, example_library, from_spec, interval_partition_functor,
                                kunneth_functor, leq, named_space, partition_functor, sign_extension_attempt)
from twistcoef.functor import degree, height
from twistcoef import functor_io


def multinomial_rank(n, lam):
    s = sum(lam)
    return 0 if n < s else factorial(n) // (factorial(n - s) * prod(factorial(x) for x in lam))


@pytest.mark.parametrize("lam", [(1,), (2,), (1, 1), (2, 1), (1, 2), (3,)])
def test_partition_ranks(lam):
    T = partition_functor(lam, "Z", 5)
    assert T.ranks() == [multinomial_rank(n, lam) for n in range(6)]


def test_kunneth_ranks_closed_forms():
    # H_q of the n-torus has rank C(n, q); H_q((S^2)^n) has rank C(n, q/2) for even q
    for q in (1, 2, 3):
        T = kunneth_functor(named_space("circle"), q, "Q", 5)
        assert T.ranks() == [comb(n, q) for n in range(6)]
    T = kunneth_functor(named_space("S2"), 4, "Q", 5)
    assert T.ranks() == [comb(n, 2) for n in range(6)]


@pytest.mark.parametrize("space,q,h", [("circle", 1, 0), ("circle", 2, 0), ("circle", 3, 0),
                                       ("S2", 2, 1), ("S2", 4, 1), ("[1;0;1]", 3, 1)])
def test_kunneth_degree_bound(space, q, h):
    T = kunneth_functor(named_space(space), q, "Q", 6)
    d = degree(T)
    assert d.determinate and d.value <= q // (h + 1)


def test_kunneth_degree_exact_values():
    vals = {(s, q): degree(kunneth_functor(named_space(s), q, "Q", 6)).value
            for s, q in [("circle", 1), ("circle", 2), ("circle", 3), ("S2", 2), ("S2", 4)]}
    assert vals == {("circle", 1): 1, ("circle", 2): 2, ("circle", 3): 3, ("S2", 2): 1, ("S2", 4): 2}


@pytest.mark.parametrize("lam", [(1,), (2,), (1, 1), (3,)])
def test_interval_point_is_partition_functor(lam):
    a = interval_partition_functor(lam, lam, "Z", 4)
    b = partition_functor(lam, "Z", 4)
    assert a.ranks() == b.ranks()
    for atom, f in b.generator_images().items():
        assert a.gen(atom).matrix == f.matrix


def test_interval_point_with_reordered_type():
    # [(2,1),(2,1)] also contains (1,2), so the functor is P(2,1) + P(1,2)
    a = interval_partition_functor((2, 1), (2, 1), "Z", 4)
    assert a.ranks() == [x + y for x, y in zip(partition_functor((2, 1), "Z", 4).ranks(),
                                               partition_functor((1, 2), "Z", 4).ranks())]


def test_interval_degree_is_top():
    assert degree(interval_partition_functor((1,), (2,), "Z", 5)).value == 2
    assert degree(interval_partition_functor((1,), (1, 1), "Z", 5)).value == 2


def test_preorder():
    assert leq((1,), (2,)) and leq((1, 1), (2, 1)) and not leq((2,), (1, 1))
    # not antisymmetric on ordered types: (1,2) and (2,1) sit below each other
    assert leq((1, 2), (2, 1)) and leq((2, 1), (1, 2))


def test_sign_attempt_fails_with_witness():
    rep = sign_extension_attempt(3)
    assert rep.failed_as_expected
    assert not rep.functoriality.ok and rep.functoriality.witness
    assert rep.permutations_only_ok and rep.iota_naturality_ok
    assert rep.composite_lhs.data == [[0, 1], [1, 0]] and rep.composite_rhs.is_identity()


def test_library_is_functorial_and_heights_bounded():
    for spec, T in example_library(4).items():
        assert T.check_functoriality(bound=3).ok, spec
        d, h = degree(T), height(T)
        if d.determinate and h.determinate:
            assert h.value <= d.value, spec


def test_from_spec_forms_and_errors():
    assert from_spec("const:Z/2", 2).groups[1].invariants() == ((2,), 0)
    assert from_spec("partition:1,F2", 2).ring == "Fp:2"
    assert from_spec("kunneth:circle,q=1", 2).ring == "Q"
    for bad in ("nope:1", "partition:a", "kunneth:circle", "interval:1", "kunneth:circle,r=1", "const:R"):
        with pytest.raises(FamilyError):
            from_spec(bad, 2)


def test_library_specs_round_trip_through_files():
    for spec in LIBRARY:
        T = from_spec(spec, 3)
        assert functor_io.loads(functor_io.dumps(T)).family == spec
