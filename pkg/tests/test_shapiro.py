"""Layers of the decomposition as induced modules: three routes to the same homology."""

from math import comb

import pytest

from twistcoef.families import from_spec
from twistcoef.homology import (PermGroup, bar_cells, bar_homology, induced_layer_module, shapiro_reduce,
                                top_piece_module, trivial_module, twisted_homology)


def inv(groups):
    return [G.group.invariants() if hasattr(G, "group") else G.invariants() for G in groups]


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_permutation_functor_reduces_to_smaller_group(n):
    T = from_spec("partition:1", 5)
    cert = shapiro_reduce(T, n, 1, 2, use_bar=False)
    assert cert.ok and cert.layer_rank == n and cert.piece_rank == 1
    small = inv(twisted_homology(trivial_module(PermGroup.symmetric(n - 1)), 2))
    assert inv(twisted_homology(induced_layer_module(T, n, 1), 2)) == small


def test_layer_k0_is_the_invariant_part():
    T = from_spec("const:Z", 4)
    for n in range(1, 5):
        cert = shapiro_reduce(T, n, 0, 1, use_bar=False)
        assert cert.ok and cert.layer_rank == 1
        assert [c.induced for c in cert.cells] == [c.young for c in cert.cells]
    # P(1) has nothing in layer 0
    assert shapiro_reduce(from_spec("partition:1", 3), 3, 0, 1).layer_rank == 0


def test_exterior_layer_with_bar_agreement():
    T = from_spec("partition:1,1", 3)
    cert = shapiro_reduce(T, 3, 2, 2)
    assert cert.ok and cert.bar_cells == 3
    assert [c.induced for c in cert.cells] == ["Z", "0", "0"]  # H_*(S_1 x S_2; Z) with trivial action


@pytest.mark.parametrize("spec", ["partition:1", "partition:2", "partition:2,1", "const:Z", "kunneth:circle,q=2,Q"])
def test_all_layers_agree(spec):
    T = from_spec(spec, 4)
    for n in range(1, 5):
        for k in range(n + 1):
            cert = shapiro_reduce(T, n, k, 2)
            assert cert.ok, [c.record() for c in cert.cells]
            assert cert.layer_rank == comb(n, k) * cert.piece_rank


def test_bar_cells_shrink_degree_to_fit_budget():
    T = from_spec("partition:1", 4)
    top, groups = bar_cells(T, 4, 1, 2)
    assert top == 1 and len(groups) == 2
    assert [G.invariants() for G in groups] == inv(twisted_homology(top_piece_module(T, 4, 1), 1))


def test_fields():
    T = from_spec("partition:2", 3)
    for ring in ("Fp:2", "Fp:3", "Q"):
        cert = shapiro_reduce(T, 3, 2, 2, ring=ring)
        assert cert.ok and cert.bar_cells == 3
    W = induced_layer_module(T, 3, 2)
    assert [G.describe() for G in bar_homology(W, 1, "Fp:2")] == ["Z/2", "Z/2"]
