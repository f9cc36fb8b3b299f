"""Finitely generated abelian groups by generators and relations.

A group is ``Z^ngens / (column span of relations)``.  Homomorphisms carry
the integer matrix of generator images (target.ngens x source.ngens).  Most
groups produced by the library are in *diagonal* form: generator i has
order ``invariants[i]`` (0 for infinite order).  Diagonal groups make
membership tests and normal forms of elements a coordinate-wise affair.
"""

from __future__ import annotations

from typing import Sequence

from .matrix import IntMatrix, hstack, vstack, block_diagonal
from .snf import SmithForm, smith_normal_form
from . import modp


class NotWellDefined(ValueError):
    pass


class FgAbGroup:
    __slots__ = ("ngens", "relations", "_snf", "_diag")

    def __init__(self, ngens: int, relations: IntMatrix | None = None, cached_snf: SmithForm | None = None):
        if relations is None:
            relations = IntMatrix.zeros(ngens, 0)
        if relations.rows != ngens:
            raise ValueError("relation matrix must have one row per generator")
        self.ngens = ngens
        self.relations = relations
        self._snf = cached_snf
        self._diag = None

    # -- constructors ---------------------------------------------------
    @classmethod
    def from_invariants(cls, invariants: Sequence[int]) -> FgAbGroup:
        """Diagonal group; an entry 0 is a copy of Z, k > 0 is Z/k."""
        invariants = [abs(int(x)) for x in invariants]
        cols = []
        for i, k in enumerate(invariants):
            if k:
                c = [0] * len(invariants)
                c[i] = k
                cols.append(c)
        g = cls(len(invariants), IntMatrix.from_columns(cols, len(invariants)))
        g._diag = tuple(invariants)
        return g

    @classmethod
    def free(cls, n: int) -> FgAbGroup:
        return cls.from_invariants([0] * n)

    @classmethod
    def zero(cls) -> FgAbGroup:
        return cls.from_invariants([])

    @classmethod
    def cyclic(cls, k: int) -> FgAbGroup:
        return cls.from_invariants([k])

    # -- structure ------------------------------------------------------
    def snf(self) -> SmithForm:
        if self._snf is None:
            self._snf = smith_normal_form(self.relations)
        return self._snf

    @property
    def diagonal(self):
        """Tuple of generator orders if the presentation is diagonal, else None."""
        if self._diag is None:
            R = self.relations
            inv = [0] * self.ngens
            ok = True
            for j in range(R.cols):
                col = R.column(j)
                nz = [i for i, x in enumerate(col) if x]
                if len(nz) == 0:
                    continue
                if len(nz) > 1 or inv[nz[0]]:
                    ok = False
                    break
                inv[nz[0]] = abs(col[nz[0]])
            self._diag = tuple(inv) if ok else False
        return None if self._diag is False else self._diag

    def invariants(self) -> tuple[tuple[int, ...], int]:
        """(torsion invariant factors > 1 in divisibility order, free rank)."""
        sf = self.snf()
        tors = tuple(x for x in sf.d if x > 1)
        nonzero = sum(1 for x in sf.d if x)
        return tors, self.ngens - nonzero

    def canonical(self) -> tuple:
        return self.invariants()

    @property
    def rank(self) -> int:
        return self.invariants()[1]

    @property
    def torsion(self) -> tuple[int, ...]:
        return self.invariants()[0]

    def order(self):
        tors, free = self.invariants()
        if free:
            return None
        out = 1
        for t in tors:
            out *= t
        return out

    def is_zero(self) -> bool:
        return self.invariants() == ((), 0)

    def is_free(self) -> bool:
        return not self.invariants()[0]

    def isomorphic(self, other: FgAbGroup) -> bool:
        return self.canonical() == other.canonical()

    def describe(self) -> str:
        tors, free = self.invariants()
        parts = [f"Z/{t}" for t in tors]
        if free == 1:
            parts.append("Z")
        elif free > 1:
            parts.append(f"Z^{free}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"FgAbGroup({self.describe()}; {self.ngens} gens)"

    def same_presentation(self, other: FgAbGroup) -> bool:
        return self is other or (self.ngens == other.ngens and self.relations == other.relations)

    # -- elements -------------------------------------------------------
    def in_relations(self, v: Sequence[int]) -> bool:
        """True iff v is zero in the group."""
        d = self.diagonal
        if d is not None:
            return all((x % k == 0) if k else x == 0 for x, k in zip(v, d))
        if not any(v):
            return True
        sf = self.snf()
        uv = sf.U.apply(list(v))
        for i, x in enumerate(uv):
            di = sf.d[i] if i < len(sf.d) else 0
            if (di and x % di) or (not di and x):
                return False
        return True

    def normalize(self, v: Sequence[int]) -> tuple[int, ...]:
        """Canonical representative of an element (diagonal groups only)."""
        d = self.diagonal
        if d is None:
            raise ValueError("normal forms need a diagonal presentation")
        return tuple((x % k) if k else x for x, k in zip(v, d))

    # -- reshaping ------------------------------------------------------
    def simplify(self):
        """Equivalent diagonal presentation.

        Returns (G, to_new, to_old) where to_new: self -> G and to_old: G -> self
        are mutually inverse isomorphisms.  G lists torsion generators first
        (increasing orders) and then the free ones.
        """
        if self.diagonal is not None and _is_sorted_diag(self.diagonal):
            ident = AbMap.identity(self)
            return self, ident, ident
        sf = self.snf()
        m = self.ngens
        keep = []
        invs = []
        for i in range(m):
            di = sf.d[i] if i < len(sf.d) else 0
            if di == 1:
                continue
            keep.append(i)
            invs.append(di)
        G = FgAbGroup.from_invariants(invs)
        U, Ui = sf.U, sf.U_inv
        to_new = IntMatrix([U.data[i] for i in keep], len(keep), m)
        to_old = IntMatrix([[Ui.data[r][i] for i in keep] for r in range(m)], m, len(keep))
        # reduce the torsion coordinates of to_new so entries stay small
        for a, k in enumerate(invs):
            if k:
                to_new.data[a] = [x % k for x in to_new.data[a]]
        return G, AbMap(self, G, to_new, check=False), AbMap(G, self, to_old, check=False)


def _is_sorted_diag(d):
    tors = [k for k in d if k]
    if any(k == 1 for k in d):
        return False
    nfree = sum(1 for k in d if k == 0)
    if list(d) != tors + [0] * nfree:
        return False
    return all(tors[i + 1] % tors[i] == 0 for i in range(len(tors) - 1))


class AbMap:
    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: FgAbGroup, target: FgAbGroup, matrix: IntMatrix, check: bool = True):
        if matrix.shape != (target.ngens, source.ngens):
            raise ValueError(f"matrix shape {matrix.shape} does not match "
                             f"{target.ngens}x{source.ngens}")
        self.source = source
        self.target = target
        self.matrix = matrix
        if check and not self.is_well_defined():
            raise NotWellDefined("map does not send relations to relations")

    @classmethod
    def identity(cls, G: FgAbGroup) -> AbMap:
        return cls(G, G, IntMatrix.identity(G.ngens), check=False)

    @classmethod
    def zero(cls, A: FgAbGroup, B: FgAbGroup) -> AbMap:
        return cls(A, B, IntMatrix.zeros(B.ngens, A.ngens), check=False)

    def is_well_defined(self) -> bool:
        R = self.source.relations
        if R.cols == 0:
            return True
        img = self.matrix @ R
        return all(self.target.in_relations(img.column(j)) for j in range(img.cols))

    def apply(self, v: Sequence[int]) -> list[int]:
        return self.matrix.apply(list(v))

    def __matmul__(self, other: AbMap) -> AbMap:
        """self o other."""
        if other.target.ngens != self.source.ngens:
            raise ValueError("maps do not compose")
        return AbMap(other.source, self.target, self.matrix @ other.matrix, check=False)

    def __add__(self, other: AbMap) -> AbMap:
        return AbMap(self.source, self.target, self.matrix + other.matrix, check=False)

    def __sub__(self, other: AbMap) -> AbMap:
        return AbMap(self.source, self.target, self.matrix - other.matrix, check=False)

    def __neg__(self) -> AbMap:
        return AbMap(self.source, self.target, -self.matrix, check=False)

    def scale(self, c: int) -> AbMap:
        return AbMap(self.source, self.target, self.matrix.scale(c), check=False)

    def is_zero(self) -> bool:
        M = self.matrix
        return all(self.target.in_relations(M.column(j)) for j in range(M.cols))

    def equals(self, other: AbMap) -> bool:
        """Equality as homomorphisms (matrices may differ by relations)."""
        if self.matrix.shape != other.matrix.shape:
            return False
        return (self - other).is_zero()

    def __eq__(self, other):
        if not isinstance(other, AbMap):
            return NotImplemented
        return self.equals(other)

    __hash__ = None

    def reduced(self) -> AbMap:
        """Same map with entries reduced modulo a diagonal target."""
        d = self.target.diagonal
        if d is None:
            return self
        data = [[(x % k) if k else x for x in row] for row, k in zip(self.matrix.data, d)]
        return AbMap(self.source, self.target, IntMatrix(data, self.matrix.rows, self.matrix.cols), check=False)

    def is_injective(self) -> bool:
        return kernel(self)[0].is_zero()

    def is_surjective(self) -> bool:
        return cokernel(self)[0].is_zero()

    def is_iso(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def inverse(self) -> AbMap:
        if not self.is_iso():
            raise ValueError("map is not an isomorphism")
        return factor_through(AbMap.identity(self.target), self)

    def __repr__(self):
        return f"AbMap({self.source.describe()} -> {self.target.describe()}, {self.matrix!r})"


# ---------------------------------------------------------------------------
# lattice helpers

def _lattice_basis(X: IntMatrix) -> IntMatrix:
    """Z-basis (as columns) of the column span of X."""
    if X.cols == 0:
        return IntMatrix.zeros(X.rows, 0)
    sf = smith_normal_form(X)
    cols = []
    for i, di in enumerate(sf.d):
        if di:
            cols.append([di * x for x in sf.U_inv.column(i)])
    return IntMatrix.from_columns(cols, X.rows)


def _preimage_lattice(M: IntMatrix, target: FgAbGroup) -> IntMatrix:
    """Basis of {x : M x is zero in target}."""
    n = M.cols
    R = target.relations
    big = hstack(M, R) if R.cols else M
    from .snf import integer_kernel
    K = integer_kernel(big)
    X = IntMatrix([K.data[i] for i in range(n)], n, K.cols)
    return _lattice_basis(X)


def _coords_in_basis(B: IntMatrix, v: Sequence[int], sf: SmithForm | None = None):
    """Coordinates of v in the lattice basis B (columns), or None."""
    from .snf import solve_integer
    return solve_integer(B, v, sf)


# ---------------------------------------------------------------------------
# kernels, images, cokernels

def kernel(f: AbMap):
    """(K, inclusion K -> source) with image exactly ker f."""
    A = f.source
    P = _preimage_lattice(f.matrix, f.target)  # contains the relations of A
    k = P.cols
    if k == 0:
        K = FgAbGroup.zero()
        return K, AbMap(K, A, IntMatrix.zeros(A.ngens, 0), check=False)
    sf = smith_normal_form(P)
    rels = []
    for j in range(A.relations.cols):
        c = _coords_in_basis(P, A.relations.column(j), sf)
        assert c is not None
        rels.append(c)
    Kp = FgAbGroup(k, IntMatrix.from_columns(rels, k))
    inc = AbMap(Kp, A, P, check=False)
    K, _, to_old = Kp.simplify()
    return K, inc @ to_old


def image(f: AbMap):
    """(I, inclusion I -> target) with image exactly im f."""
    A = f.source
    P = _preimage_lattice(f.matrix, f.target)
    Ip = FgAbGroup(A.ngens, P)
    I, _, to_old = Ip.simplify()
    inc = AbMap(Ip, f.target, f.matrix, check=False) @ to_old
    return I, inc.reduced()


def cokernel(f: AbMap):
    """(C, quotient target -> C)."""
    B = f.target
    rel = hstack(B.relations, f.matrix)
    Cp = FgAbGroup(B.ngens, rel)
    C, to_new, _ = Cp.simplify()
    q = AbMap(B, C, to_new.matrix, check=False)
    return C, q


def factor_through(f: AbMap, j: AbMap) -> AbMap:
    """g with j o g = f, for j injective with im f contained in im j."""
    if f.target.ngens != j.target.ngens:
        raise ValueError("f and j need the same target")
    B = j.target
    big = hstack(j.matrix, B.relations) if B.relations.cols else j.matrix
    if big.cols == 0:
        if not f.is_zero():
            raise ValueError("image of f is not contained in image of j")
        return AbMap.zero(f.source, j.source)
    sf = smith_normal_form(big)
    from .snf import solve_integer
    cols = []
    k = j.source.ngens
    for c in range(f.source.ngens):
        z = solve_integer(big, f.matrix.column(c), sf)
        if z is None:
            raise ValueError("image of f is not contained in image of j")
        cols.append(z[:k])
    g = AbMap(f.source, j.source, IntMatrix.from_columns(cols, k), check=False)
    return g.reduced()


def preimage_element(j: AbMap, v: Sequence[int]):
    """Some x with j(x) = v in the target, or None."""
    B = j.target
    big = hstack(j.matrix, B.relations) if B.relations.cols else j.matrix
    from .snf import solve_integer
    if big.cols == 0:
        return [] if B.in_relations(v) else None
    z = solve_integer(big, list(v))
    return None if z is None else z[:j.source.ngens]


def intersect_subgroups(inclusions: Sequence[AbMap]):
    """(I, inclusion I -> ambient) for the intersection of the images."""
    if not inclusions:
        raise ValueError("need at least one subgroup")
    amb = inclusions[0].target
    for inc in inclusions:
        if not inc.target.same_presentation(amb):
            raise ValueError("subgroups must live in the same ambient group")
        if not inc.is_injective():
            raise ValueError("intersect_subgroups needs injective inclusions")
    cur = inclusions[0]
    for other in inclusions[1:]:
        S = direct_sum_groups([cur.source, other.source])
        diff = AbMap(S, amb, hstack(cur.matrix, -other.matrix), check=False)
        K, kinc = kernel(diff)
        proj1 = IntMatrix([kinc.matrix.data[i] for i in range(cur.source.ngens)],
                          cur.source.ngens, K.ngens)
        cur = (cur @ AbMap(K, cur.source, proj1, check=False)).reduced()
    return cur.source, cur


def direct_sum_groups(groups: Sequence[FgAbGroup]) -> FgAbGroup:
    if not groups:
        return FgAbGroup.zero()
    diags = [g.diagonal for g in groups]
    if all(d is not None for d in diags):
        return FgAbGroup.from_invariants([k for d in diags for k in d])
    return FgAbGroup(sum(g.ngens for g in groups), block_diagonal(*[g.relations for g in groups]))


def direct_sum_maps(maps: Sequence[AbMap], source: FgAbGroup | None = None,
                    target: FgAbGroup | None = None) -> AbMap:
    source = source or direct_sum_groups([f.source for f in maps])
    target = target or direct_sum_groups([f.target for f in maps])
    return AbMap(source, target, block_diagonal(*[f.matrix for f in maps]), check=False)


# ---------------------------------------------------------------------------
# homology

def parse_ring(ring: str):
    """'Z', 'Q' or 'Fp:<p>' -> ('Z', 0) / ('Q', 0) / ('Fp', p)."""
    ring = ring.strip()
    if ring == "Z":
        return ("Z", 0)
    if ring == "Q":
        return ("Q", 0)
    if ring.startswith("Fp:") or ring.startswith("F"):
        txt = ring[3:] if ring.startswith("Fp:") else ring[1:]
        try:
            p = int(txt)
        except ValueError:
            raise ValueError(f"bad ring {ring!r}") from None
        if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        return ("Fp", p)
    raise ValueError(f"unknown ring {ring!r}; expected Z, Q or Fp:<p>")


def rank_over(M: IntMatrix, ring) -> int:
    kind, p = parse_ring(ring) if isinstance(ring, str) else ring
    if kind == "Fp":
        return modp.rank_mod_p(M, p)
    return smith_normal_form(M, transforms=False).rank


def homology_of_complex(d_next: AbMap, d_here: AbMap, ring="Z") -> FgAbGroup:
    """ker(d_here) / im(d_next).

    Over Q or F_p the chain groups are taken to be free and the matrices are
    read with coefficients in the field; the answer is Q^k or (Z/p)^k.
    """
    if d_next.target.ngens != d_here.source.ngens:
        raise ValueError("maps do not compose")
    kind, p = parse_ring(ring) if isinstance(ring, str) else ring
    comp = d_here.matrix @ d_next.matrix
    if kind == "Z":
        if not (d_here @ d_next).is_zero():
            raise ValueError("d_here o d_next is not zero")
        K, inc = kernel(d_here)
        lift = factor_through(d_next, inc)
        H, _ = cokernel(lift)
        return H
    if kind == "Fp":
        if not comp.mod(p).is_zero():
            raise ValueError("d_here o d_next is not zero mod p")
        dim = d_here.source.ngens - modp.rank_mod_p(d_here.matrix, p) - modp.rank_mod_p(d_next.matrix, p)
        return FgAbGroup.from_invariants([p] * dim)
    if not comp.is_zero():
        raise ValueError("d_here o d_next is not zero")
    dim = d_here.source.ngens - rank_over(d_here.matrix, ring) - rank_over(d_next.matrix, ring)
    return FgAbGroup.free(dim)
