"""Split injectivity from transfer-like maps in degree zero."""

from math import comb

import pytest

from twistcoef.families import from_spec
from twistcoef.homology import DoldData, check_hypothesis, coinvariant_data, dold_splitting, toy_data
from twistcoef.linalg import AbMap, FgAbGroup, IntMatrix


def test_toy_multiplication_fails_with_witness():
    res = dold_splitting(toy_data(2))
    assert not res.ok and res.witness == (1, 1, (1,))
    assert "witness: k=1, n=1, x=[1]" in res.lines()


def test_toy_identity_splits():
    res = dold_splitting(toy_data(1))
    assert res.ok and res.rho[1].matrix.data == [[1]]


def test_tau_diagonal_must_be_identity():
    data = toy_data(1)
    Z = data.A[1]
    data.tau[(2, 2)] = AbMap(Z, Z, IntMatrix([[3]], 1, 1))
    ok, witness, _ = check_hypothesis(data)
    assert not ok and witness == (2, 2, ())


def test_permutation_functor_transfers_are_binomial():
    data = coinvariant_data(from_spec("partition:1", 5))
    for n in range(1, 6):
        assert data.A[n].describe() == "Z"
        for k in range(1, n + 1):
            assert data.tau[(k, n)].matrix.data == [[comb(n - 1, k - 1)]]
    res = dold_splitting(data)
    assert res.ok and sorted(res.rho) == [1, 2, 3, 4]
    for n, r in res.rho.items():
        assert (r @ data.phi[n]).equals(AbMap.identity(data.A[n]))


def test_constant_functor_violates_hypothesis():
    # tau_{k,n} is multiplication by C(n, k), and phi_n is the identity
    data = coinvariant_data(from_spec("const:Z", 4))
    assert data.tau[(1, 3)].matrix.data == [[3]]
    res = dold_splitting(data)
    assert not res.ok and res.witness[:2] == (1, 1)


@pytest.mark.parametrize("spec", ["partition:1,1", "partition:2", "partition:2,1", "kunneth:circle,q=2,Q"])
def test_splitting_on_library(spec):
    res = dold_splitting(coinvariant_data(from_spec(spec, 4)))
    assert res.ok, res.lines()


def test_splitting_from_hand_data():
    # A_1 = Z, A_2 = Z + Z/2 with phi_1 the first inclusion and tau_{1,2} the projection
    Z, B = FgAbGroup.free(1), FgAbGroup.from_invariants([0, 2])
    phi = {1: AbMap(Z, B, IntMatrix([[1], [0]], 2, 1))}
    tau = {(1, 1): AbMap.identity(Z), (2, 2): AbMap.identity(B), (1, 2): AbMap(B, Z, IntMatrix([[1, 0]], 1, 2))}
    res = dold_splitting(DoldData({1: Z, 2: B}, phi, tau))
    assert res.ok
    assert (res.rho[1] @ phi[1]).equals(AbMap.identity(Z))
