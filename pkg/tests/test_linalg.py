from hypothesis import given, strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from twistcoef.linalg import (AbMap, FgAbGroup, IntMatrix, cokernel, elementary_divisors, factor_through,
                              homology_of_complex, image, integer_kernel, intersect_subgroups, kernel, kron,
                              determinant, preimage_element, rank_mod_p, smith_normal_form, solve_integer,
                              sparse_elementary_divisors, nullspace_mod_p, solve_mod_p, parse_ring)

small = st.integers(-6, 6)


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    return IntMatrix([[draw(small) for _ in range(c)] for _ in range(r)], r, c)


def sympy_divisors(A: IntMatrix):
    if A.rows == 0 or A.cols == 0:
        return []
    return [abs(int(x)) for x in invariant_factors(Matrix(A.data), domain=ZZ) if x != 0]


@given(matrices())
def test_snf_transforms(A):
    sf = smith_normal_form(A)
    D = sf.U @ A @ sf.V
    assert D == IntMatrix.diagonal(sf.d, A.rows, A.cols)
    assert (sf.U @ sf.U_inv).is_identity()
    nz = [x for x in sf.d if x]
    assert all(x > 0 for x in nz)
    assert all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1))
    assert sf.d[:len(nz)] == nz


@given(matrices(6, 6))
def test_divisors_match_sympy(A):
    assert [x for x in elementary_divisors(A) if x] == sympy_divisors(A)


@given(matrices(6, 6))
def test_sparse_path_matches_dense(A):
    cols = [{i: A.data[i][j] for i in range(A.rows) if A.data[i][j]} for j in range(A.cols)]
    assert sparse_elementary_divisors(cols, A.rows) == [x for x in elementary_divisors(A) if x]


def test_sparse_path_large_matrix():
    # above the sparse threshold: a 70x70 bidiagonal matrix 1 on the diagonal, 2 below
    n = 70
    A = IntMatrix.zeros(n, n)
    for i in range(n):
        A.data[i][i] = 2 if i == n - 1 else 1
        if i + 1 < n:
            A.data[i + 1][i] = 2
    d = smith_normal_form(A, transforms=False).d
    assert d[-1] == abs(determinant(A)) and all(x == 1 for x in d[:-1])


@given(matrices())
def test_kernel_is_saturated_and_exact(A):
    K = integer_kernel(A)
    assert (A @ K).is_zero()
    assert K.cols == A.cols - smith_normal_form(A, transforms=False).rank
    if K.cols:
        assert all(x == 1 for x in elementary_divisors(K) if x)


@given(matrices(), st.lists(small, min_size=5, max_size=5))
def test_solve_integer(A, x):
    b = A.apply(x[:A.cols])
    z = solve_integer(A, b)
    assert z is not None and A.apply(z) == b


def test_solve_integer_rejects_rational_only():
    assert solve_integer(IntMatrix([[2]]), [1]) is None


def test_determinant_and_kron():
    A = IntMatrix([[1, 2], [3, 4]])
    assert determinant(A) == -2
    assert determinant(kron(A, IntMatrix.identity(2))) == 4


def test_group_invariants_and_describe():
    G = FgAbGroup(2, IntMatrix([[2, 0], [0, 4]]))
    assert G.invariants() == ((2, 4), 0) and G.describe() == "Z/2 + Z/4"
    H = FgAbGroup(2, IntMatrix([[2], [4]]))
    assert H.invariants() == ((2,), 1)
    assert FgAbGroup.from_invariants([6, 0, 1]).describe() == "Z/6 + Z"
    assert FgAbGroup.zero().is_zero()


def test_cokernel_kernel_image_on_multiplication():
    Z = FgAbGroup.free(1)
    f = AbMap(Z, Z, IntMatrix([[6]]))
    C, q = cokernel(f)
    assert C.invariants() == ((6,), 0)
    K, _ = kernel(f)
    assert K.is_zero()
    I, inc = image(f)
    assert I.rank == 1
    Z6 = FgAbGroup.cyclic(6)
    g = AbMap(Z6, Z6, IntMatrix([[2]]))
    K, inc = kernel(g)
    assert K.invariants() == ((2,), 0)
    assert cokernel(g)[0].invariants() == ((2,), 0)


def test_map_well_definedness():
    from twistcoef.linalg import NotWellDefined
    import pytest
    with pytest.raises(NotWellDefined):
        AbMap(FgAbGroup.cyclic(2), FgAbGroup.free(1), IntMatrix([[1]]))
    AbMap(FgAbGroup.cyclic(2), FgAbGroup.cyclic(4), IntMatrix([[2]]))


def test_inverse_and_factor_through():
    Z2 = FgAbGroup.free(2)
    f = AbMap(Z2, Z2, IntMatrix([[2, 1], [1, 1]]))
    assert f.is_iso()
    assert (f.inverse() @ f).equals(AbMap.identity(Z2))
    j = AbMap(FgAbGroup.free(1), Z2, IntMatrix([[2], [0]]))
    h = AbMap(FgAbGroup.free(1), Z2, IntMatrix([[4], [0]]))
    g = factor_through(h, j)
    assert g.matrix.data == [[2]]
    assert preimage_element(j, [1, 0]) is None


def test_intersection_of_subgroups():
    Z = FgAbGroup.free(1)
    a = AbMap(Z, Z, IntMatrix([[4]]))
    b = AbMap(Z, Z, IntMatrix([[6]]))
    I, inc = intersect_subgroups([a, b])
    assert inc.matrix.data in ([[12]], [[-12]])


def test_homology_of_complex():
    # Z --2--> Z --0--> Z : H at the middle is Z/2 and rank checks
    Z = FgAbGroup.free(1)
    d2 = AbMap(Z, Z, IntMatrix([[2]]))
    d1 = AbMap(Z, Z, IntMatrix([[0]]))
    assert homology_of_complex(d2, d1).invariants() == ((2,), 0)


@given(matrices(5, 5), st.sampled_from([2, 3, 5, 7]))
def test_rank_mod_p_matches_sympy(A, p):
    from sympy import GF
    from sympy.polys.matrices import DomainMatrix
    dm = DomainMatrix([[GF(p)(x) for x in row] for row in A.data], (A.rows, A.cols), GF(p))
    assert rank_mod_p(A, p) == dm.rank()


@given(matrices(5, 5), st.sampled_from([2, 3, 5]))
def test_nullspace_and_solve_mod_p(A, p):
    for v in nullspace_mod_p(A, p):
        assert all(x % p == 0 for x in A.apply(v))
    assert len(nullspace_mod_p(A, p)) == A.cols - rank_mod_p(A, p)
    b = A.apply([1] * A.cols)
    x = solve_mod_p(A, b, p)
    assert x is not None and all((u - w) % p == 0 for u, w in zip(A.apply(x), b))


def test_parse_ring():
    assert parse_ring("Z") == ("Z", 0) and parse_ring("Q") == ("Q", 0)
    assert parse_ring("Fp:2") == ("Fp", 2) and parse_ring("F3") == ("Fp", 3)
    import pytest
    for bad in ("Fp:4", "R", "Fp:x"):
        with pytest.raises(ValueError):
            parse_ring(bad)
