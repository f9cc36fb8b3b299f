import pytest
from hypothesis import given, strategies as st

from twistcoef import sigma as sg


@st.composite
def morphisms(draw, m=None, n=None, bound=5):
    m = draw(st.integers(0, bound)) if m is None else m
    n = draw(st.integers(0, bound)) if n is None else n
    k = draw(st.integers(0, min(m, n)))
    dom = draw(st.permutations(range(1, m + 1)))[:k]
    img = draw(st.permutations(range(1, n + 1)))[:k]
    return sg.make(m, n, dict(zip(dom, img)))


@st.composite
def composable_triples(draw):
    a, b, c, d = (draw(st.integers(0, 5)) for _ in range(4))
    return draw(morphisms(a, b)), draw(morphisms(b, c)), draw(morphisms(c, d))


@given(composable_triples())
def test_composition_is_associative(fgh):
    f, g, h = fgh
    assert sg.compose(h, sg.compose(g, f)) == sg.compose(sg.compose(h, g), f)


@given(morphisms())
def test_identities(f):
    assert sg.compose(sg.identity(f.n), f) == f == sg.compose(f, sg.identity(f.m))


@given(morphisms())
def test_partial_inverse(f):
    inv = f.partial_inverse()
    e = sg.compose(inv, f)
    assert all(e(i) == (i if f(i) is not None else None) for i in range(1, f.m + 1))
    assert sg.compose(f, sg.compose(inv, f)) == f


@given(morphisms())
def test_generator_word_evaluates_back(f):
    w = sg.decompose_into_generators(f)
    w.check()
    assert w.evaluate(f.m) == f


@given(morphisms())
def test_notation_round_trip(f):
    assert sg.parse_morphism(str(f)) == f


def test_iota_and_pi_conventions():
    assert sg.iota(3).images == (2, 3, 4)
    assert sg.pi(3).images == (None, 1, 2)
    assert sg.compose(sg.pi(4), sg.iota(3)) == sg.identity(3)
    # pi o iota = id but iota o pi forgets the new point
    assert sg.compose(sg.iota(2), sg.pi(3)) == sg.forget_morphism(3, {1})


def test_stabilize_commutes_with_iota():
    p = sg.permutation((3, 1, 2))
    assert sg.compose(sg.iota(3), p) == sg.compose(sg.stabilize_morphism(p), sg.iota(3))


def test_order_preserving_projection():
    f = sg.order_preserving_projection(5, {2, 4, 5})
    assert f.images == (None, 1, None, 2, 3)
    assert sg.shift_down({2, 3}) == frozenset({1, 2})


@pytest.mark.parametrize("m,n", [(0, 0), (1, 2), (2, 2), (3, 2), (3, 4)])
def test_hom_count_matches_enumeration(m, n):
    homs = sg.enumerate_hom(m, n)
    assert len(homs) == sg.hom_count(m, n) == len(set(homs))


def test_hom_count_values():
    # |Hom(n, n)| is the number of partial permutations: 1, 2, 7, 34, 209
    assert [sg.hom_count(n, n) for n in range(5)] == [1, 2, 7, 34, 209]


def test_errors():
    with pytest.raises(sg.SigmaError):
        sg.make(2, 2, (1, 1))
    with pytest.raises(sg.SigmaError):
        sg.compose(sg.iota(2), sg.iota(2))
    with pytest.raises(sg.SigmaError):
        sg.parse_morphism("2->2[1,2]")
    with pytest.raises(sg.SigmaError):
        sg.enumerate_hom(9, 1)
    with pytest.raises(sg.SigmaError):
        sg.transposition(3, 3)


def test_atoms():
    atoms = sg.all_atoms(3)
    assert sg.IOTA(2).morphism() == sg.iota(2)
    assert sg.PI(3).morphism() == sg.pi(3)
    assert sg.SIGMA(1, 3).morphism() == sg.transposition(1, 3)
    assert len(atoms) == len(set(atoms))
