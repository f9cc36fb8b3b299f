import pytest
import sympy
from hypothesis import given, strategies as st

from twistcoef.burau import (LaurentMatrix, LaurentPoly, burau_assignment, check_relations, closed_form_edge_value,
                             edge_effect_value, specialize)

t = sympy.Symbol("t")


def sympy_edge(k, n):
    """pi_{n+1} sigma_1^k iota_n with sympy matrices (independent arithmetic)."""
    s = sympy.eye(n + 1)
    s[0:2, 0:2] = sympy.Matrix([[1 - t, t], [1, 0]])
    iota = sympy.zeros(n + 1, n)
    for i in range(n):
        iota[i + 1, i] = 1
    pi = sympy.zeros(n, n + 1)
    for i in range(n):
        pi[i, i + 1] = 1
    return (pi * s ** k * iota).applyfunc(sympy.factor)


def to_sympy(M: LaurentMatrix):
    return sympy.Matrix([[x.to_sympy(t) for x in row] for row in M.e])


laurent = st.dictionaries(st.integers(-3, 3), st.integers(-4, 4), max_size=4).map(LaurentPoly)


@given(laurent, laurent, laurent)
def test_laurent_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a - a == LaurentPoly()
    assert sympy.expand((a * b).to_sympy(t) - a.to_sympy(t) * b.to_sympy(t)) == 0


def test_divexact_and_units():
    T, one = LaurentPoly.t(), LaurentPoly.const(1)
    assert ((T + one) * (T - one)).divexact(T + one) == T - one
    assert (LaurentPoly.t(-2) * LaurentPoly.t(2)) == one
    assert LaurentPoly.t(3).unit_inverse() == LaurentPoly.t(-3)


def test_edge_effect_closed_form_matches_sympy():
    for k in range(9):
        for n in range(1, 6):
            ee = edge_effect_value(burau_assignment(6), k, n)
            assert ee.matches_closed_form
            assert (to_sympy(ee.computed) - sympy_edge(k, n)).applyfunc(sympy.simplify) == sympy.zeros(n, n)


def test_closed_form_small_k():
    # k = 0: 1 + I; k = 1: 0 + I; k = 2: t + I
    assert to_sympy(closed_form_edge_value(0, 2)) == sympy.eye(2)
    assert to_sympy(closed_form_edge_value(1, 2)) == sympy.Matrix([[0, 0], [0, 1]])
    assert to_sympy(closed_form_edge_value(2, 2)) == sympy.Matrix([[t, 0], [0, 1]])


def test_relations_fail_exactly_at_edge_k_ge_2():
    rep = check_relations(burau_assignment(4), K=5)
    fails = rep.failures()
    assert fails and all(r.rel == "e" for r in fails)
    ks = {int(r.params.split()[0][2:]) for r in fails}
    assert ks == {2, 3, 4, 5}
    assert all("1" in r.vanishing for r in fails)
    # one power can vanish elsewhere (k = 4 also at t = +-i), but all of them together only at t = 1
    common = set.intersection(*(set(r.vanishing) for r in fails))
    assert common == {"1"}
    assert rep.by_relation()["b"][1] == 0 and rep.by_relation()["c"][1] == 0


def test_specialised_at_one_satisfies_everything():
    assert check_relations(specialize(burau_assignment(4), 1), K=8, locus=False).all_hold


@pytest.mark.parametrize("t0", [2, -1, "1/2", "-3/2"])
def test_other_rational_specialisations_fail_for_every_k_ge_2(t0):
    rep = check_relations(specialize(burau_assignment(3), t0), K=8, locus=False)
    fails = rep.failures()
    assert {r.rel for r in fails} == {"e"}
    assert {r.params for r in fails} == {f"k={k} n={n}" for k in range(2, 9) for n in (1, 2)}


def test_specialise_rejects_zero():
    with pytest.raises(ValueError):
        specialize(burau_assignment(2), 0)
