import pytest

from twistcoef.families import LIBRARY, from_spec
from twistcoef.functor_io import FunctorParseError, dump, dumps, load, loads


def same_functor(a, b):
    if a.N != b.N or a.ring != b.ring:
        return False
    if any(not x.same_presentation(y) for x, y in zip(a.groups, b.groups)):
        return False
    ga, gb = a.generator_images(), b.generator_images()
    return ga.keys() == gb.keys() and all(ga[k].matrix == gb[k].matrix for k in ga)


@pytest.mark.parametrize("spec", LIBRARY + ("sign-attempt",))
def test_round_trip_is_exact(spec):
    T = from_spec(spec, 4)
    text = dumps(T)
    U = loads(text)
    assert same_functor(T, U)
    assert dumps(U) == text


def test_file_round_trip(tmp_path):
    T = from_spec("partition:2,1", 4)
    p = tmp_path / "p21.txt"
    dump(T, p)
    assert same_functor(load(p), T)


def test_torsion_groups_round_trip():
    T = from_spec("const:Z/2", 3)
    U = loads(dumps(T))
    assert U.groups[2].invariants() == ((2,), 0)


GOOD = dumps(from_spec("partition:1", 2))


def broken(old, new):
    assert old in GOOD
    return GOOD.replace(old, new, 1)


@pytest.mark.parametrize("text,line", [
    ("", 1),
    (broken("sigma-functor v1", "sigma-functor v2"), 1),
    (broken("trunc 2", "trunc x"), 4),
    (broken("ring Z", "ring R"), 5),
    (broken("map sigma 1 2 : 2x2\n0 1\n1 0\n", ""), 16),
    (broken("0 1\n1 0", "0 1\n1"), 18),
    (broken("end", ""), 19),
    (broken("map pi 1 : 0x1", "map pi 1 : 0-1"), 13),
    (broken("object 2 torsion free 2", "object 2 torsion free 2 3"), 8),
    (GOOD + "extra\n", 20),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(FunctorParseError) as e:
        loads(text)
    assert e.value.line == line
    assert str(e.value).startswith(f"line {line}, column")


def test_wrong_matrix_shape():
    with pytest.raises(FunctorParseError, match="needs a 2x2 matrix"):
        loads(broken("map sigma 1 2 : 2x2\n0 1\n1 0\n", "map sigma 1 2 : 2x1\n0\n1\n"))


def test_comments_and_blank_lines_are_ignored():
    text = GOOD.replace("trunc 2", "# a comment\n\ntrunc 2  # inline")
    assert same_functor(loads(text), loads(GOOD))
