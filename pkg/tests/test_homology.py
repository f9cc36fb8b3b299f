from math import comb, factorial

import pytest
from hypothesis import given, strategies as st

from twistcoef.families import from_spec
from twistcoef.homology import (GModule, HomologyError, ModuleError, PermGroup, ResolutionError, bar_homology,
                                coinvariant_group, modular_symmetric_resolution, permutation_module, resolution,
                                same_homology, symmetric_resolution, trivial_module, twisted_homology,
                                young_resolution)
from twistcoef.homology.bar import BarCapExceeded
from twistcoef.homology.groups import perm_compose, perm_inverse
from twistcoef.homology.twisted import complex_for
from twistcoef.linalg import FgAbGroup, IntMatrix, sparse_elementary_divisors


def inv(H):
    return [h.group.invariants() for h in H]


Z, Z2, ZERO = ((), 1), ((2,), 0), ((), 0)


# ---------------------------------------------------------------------------
# groups

@pytest.mark.parametrize("n", range(6))
def test_symmetric_group_order_and_closure(n):
    G = PermGroup.symmetric(n)
    assert G.order == factorial(n)
    if n <= 4:
        assert G.check_closed()


@pytest.mark.parametrize("n,k", [(3, 1), (4, 2), (5, 2), (5, 3)])
def test_young_subgroup_order(n, k):
    assert PermGroup.young(n, k).order == factorial(n - k) * factorial(k)


@given(st.integers(0, 23), st.integers(0, 23), st.integers(0, 23))
def test_table_is_a_group_law(a, b, c):
    G = PermGroup.symmetric(4)
    t = G.table
    assert t[t[a, b], c] == t[a, t[b, c]]
    assert t[a, G.inverse[a]] == 0 and t[0, a] == a
    assert G.elements[t[a, b]] == perm_compose(G.elements[a], G.elements[b])
    assert G.elements[G.inverse[a]] == perm_inverse(G.elements[a])


def test_words_rebuild_elements():
    G = PermGroup.symmetric(4)
    for g in range(G.order):
        x = 0
        for k in reversed(G.word(g)):
            x = G.mul(G.gen_index(k), x)
        assert x == g


# ---------------------------------------------------------------------------
# resolutions

@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_symmetric_resolution_ranks_and_complex(n):
    res = symmetric_resolution(n, 3)
    assert res.ranks == [1, n - 1, comb(n, 2), comb(n + 1, 3)]
    assert res.check_complex()


def _exact_integrally(res, k):
    """H_k of the resolution vanishes: rank and saturation of im d_{k+1} in ker d_k."""
    N = res.group.order
    dk = sparse_elementary_divisors(res.z_columns(k), N * res.ranks[k - 1]) if k else []
    dk1 = sparse_elementary_divisors(res.z_columns(k + 1), N * res.ranks[k])
    rank_ker = N * res.ranks[k] - (len(dk) if k else 1)
    return len(dk1) == rank_ker and all(x == 1 for x in dk1)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_symmetric_resolution_is_exact(n):
    res = symmetric_resolution(n, 3)
    for k in (1, 2):
        assert _exact_integrally(res, k)


@pytest.mark.parametrize("n,k", [(3, 1), (4, 2), (4, 1), (5, 2)])
def test_young_resolution_is_a_complex(n, k):
    res = young_resolution(n, k, 3)
    assert res.group.order == factorial(n - k) * factorial(k)
    assert res.check_complex()
    if res.group.order <= 24:
        assert all(_exact_integrally(res, j) for j in (1, 2))


def test_seed_generators_come_first():
    big, small = symmetric_resolution(5, 3), symmetric_resolution(4, 3)
    # the seed is S_4 moved onto {2..5} by the shift
    shifted = big.seed.source
    assert shifted.seed.source is small and shifted.group.gens == (2, 3, 4)
    gm = big.seed.gens
    assert gm[1] == [1, 2, 3] and gm[3] == list(range(small.ranks[3]))
    assert len(set(gm[2])) == small.ranks[2]


# ---------------------------------------------------------------------------
# twisted homology: frozen values

FROZEN_TRIVIAL = {1: [Z, ZERO, ZERO], 2: [Z, Z2, ZERO], 3: [Z, Z2, ZERO], 4: [Z, Z2, Z2], 5: [Z, Z2, Z2]}


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_trivial_coefficients(n):
    assert inv(twisted_homology(trivial_module(PermGroup.symmetric(n)), 2)) == FROZEN_TRIVIAL[n]


@pytest.mark.parametrize("n,expected", [(2, [Z, ZERO, ZERO]), (3, [Z, Z2, ZERO]), (4, [Z, Z2, ZERO]),
                                        (5, [Z, Z2, Z2])])
def test_permutation_module_is_homology_of_smaller_group(n, expected):
    H = inv(twisted_homology(permutation_module(n), 2))
    assert H == expected == FROZEN_TRIVIAL[n - 1] if n > 1 else True


def test_klein_four_young_subgroup():
    # S_2 x S_2: H_1 = (Z/2)^2 and H_2 = Z/2 by the Kunneth formula
    G = PermGroup.young(4, 2)
    assert inv(twisted_homology(trivial_module(G), 2)) == [Z, ((2, 2), 0), Z2]


def test_sign_module():
    # Z with the sign action of S_2: H_0 = Z/2, H_1 = 0, H_2 = Z/2
    G = PermGroup.symmetric(2)
    M = GModule(G, FgAbGroup.free(1), [IntMatrix([[-1]])])
    assert inv(twisted_homology(M, 2)) == [Z2, ZERO, Z2]


def test_torsion_coefficients():
    G = PermGroup.symmetric(3)
    H = twisted_homology(trivial_module(G, FgAbGroup.cyclic(2)), 2)
    assert [h.describe() for h in H] == ["Z/2", "Z/2", "Z/2"]


def test_fields():
    G = PermGroup.symmetric(3)
    M = trivial_module(G)
    assert [h.describe() for h in twisted_homology(M, 2, "Fp:2")] == ["Z/2", "Z/2", "Z/2"]
    assert [h.describe() for h in twisted_homology(M, 2, "Fp:3")] == ["Z/3", "0", "0"]
    assert [h.describe() for h in twisted_homology(M, 2, "Q")] == ["Q", "0", "0"]


def test_cycle_representatives_and_class_map():
    H = twisted_homology(trivial_module(PermGroup.symmetric(3)), 2)
    assert H[1].group.describe() == "Z/2"
    assert H[1].class_of(H[1].reps[0]) == [1]
    with pytest.raises(HomologyError):
        H[2].class_of([1, 0, 0])  # the relator s_1^2 has boundary 2 e_1


def test_complex_squares_to_zero():
    T = from_spec("partition:2,1", 4)
    cx = complex_for(GModule.from_functor(T, 4), 3)
    assert cx.check()


def test_module_checks():
    G = PermGroup.symmetric(3)
    with pytest.raises(ModuleError):
        GModule(G, FgAbGroup.free(1), [IntMatrix([[1]])])
    bad = GModule(G, FgAbGroup.free(2), [IntMatrix([[0, 1], [1, 0]]), IntMatrix([[1, 1], [0, 1]])])
    ok, msg = bad.check()
    assert not ok and "relation" in msg
    assert permutation_module(3).check()[0]


# ---------------------------------------------------------------------------
# independent checks

LIB = ["const:Z", "partition:1", "partition:2", "partition:1,1", "partition:2,1", "kunneth:circle,q=2,Q"]


@pytest.mark.parametrize("spec", LIB)
def test_h0_equals_coinvariants(spec):
    T = from_spec(spec, 4)
    ring = "Q" if T.ring == "Q" else "Z"
    for n in range(5):
        M = GModule.from_functor(T, n)
        assert same_homology(twisted_homology(M, 0, ring)[0].group, coinvariant_group(M, ring), ring)


@pytest.mark.parametrize("ring", ["Z", "Fp:2", "Fp:3", "Q"])
@pytest.mark.parametrize("n", [2, 3, 4])
def test_bar_complex_agrees_with_resolution(n, ring):
    for M in (trivial_module(PermGroup.symmetric(n)), permutation_module(n)):
        D = 2 if n < 4 or (M.rank == 1) or ring.startswith("Fp") else 1
        bar = bar_homology(M, D, ring)
        res = twisted_homology(M, D, ring)
        for a, b in zip(bar, res):
            assert same_homology(a, b.group, ring)


@pytest.mark.parametrize("spec", ["partition:1,1", "partition:2", "kunneth:circle,q=2,Q"])
def test_averaging_matches_resolution_over_q(spec):
    # |S_n| is invertible in Q, so H_d = 0 for d > 0 and H_0 = coinvariants
    T = from_spec(spec, 4)
    for n in range(2, 5):
        M = GModule.from_functor(T, n)
        H = twisted_homology(M, 2, "Q")
        assert [h.rank for h in H[1:]] == [0, 0]
        assert H[0].rank == coinvariant_group(M, "Q").rank


def test_bar_budget():
    with pytest.raises(BarCapExceeded):
        bar_homology(trivial_module(PermGroup.symmetric(5)), 2, "Z")


# ---------------------------------------------------------------------------
# S_6 through a resolution that is exact mod p

def test_modular_resolution_of_s6():
    res = modular_symmetric_resolution(6, 2, 3)
    assert res.ranks == [1, 5, 15, 35]
    assert res.check_complex()
    assert res.stats["certified"] == "rank mod 2 of d_3 = 7919"
    # the seed is the shifted S_5 resolution, so stabilisation from S_5 is generator j -> j
    assert res.seed.source.seed.source is symmetric_resolution(5, 3)
    assert res.seed.gens[3] == list(range(20))
    assert modular_symmetric_resolution(5, 2, 3) is symmetric_resolution(5, 3)
    with pytest.raises(ResolutionError):
        modular_symmetric_resolution(6, 2, 4)


def test_s6_mod_2_trivial_coefficients():
    # universal coefficients from H_1 = H_2 = Z/2: dimensions 1, 1, 2
    H = twisted_homology(trivial_module(PermGroup.symmetric(6)), 2, "Fp:2")
    assert [G.group.describe() for G in H] == ["Z/2", "Z/2", "Z/2 + Z/2"]


def test_s6_mod_2_permutation_module_is_s5():
    big = twisted_homology(permutation_module(6), 2, "Fp:2")
    small = twisted_homology(trivial_module(PermGroup.symmetric(5)), 2, "Fp:2")
    assert [G.group.invariants() for G in big] == [G.group.invariants() for G in small]


def test_s6_mod_3_trivial_coefficients():
    # H_1 = H_2 = Z/2 integrally, so only H_0 survives mod 3
    H = twisted_homology(trivial_module(PermGroup.symmetric(6)), 2, "Fp:3")
    assert [G.group.describe() for G in H] == ["Z/3", "0", "0"]
