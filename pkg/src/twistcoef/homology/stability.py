"""Stabilisation maps H_d(S_n; T_n) -> H_d(S_{n+1}; T_{n+1}) and stability tables.

The map is induced by the shift S_n -> S_{n+1}, g -> 1 (+) g (the new letter
is 1, as for iota), and the coefficient map T(iota_n).  At chain level it sends
e_j (x) m to e_j' (x) T(iota_n) m where j -> j' is the generator map of the
seeded resolutions.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, gcd
from typing import Optional

from ..functor import TruncatedFunctor, degree as functor_degree
from ..linalg import AbMap, FgAbGroup, IntMatrix, parse_ring, preimage_element, solve_integer
from .. import sigma as sg
from .gmodule import GModule, module_over_ring
from .groups import PermGroup
from .resolution import INTEGRAL_LIMIT, ResolutionError, resolution_over
from .shapiro import same_homology
from .twisted import HomologyGroup, TwistedComplex, coinvariant_group, maschke_applies


class NotEquivariant(ValueError):
    """The coefficient map does not intertwine the group actions."""


class CapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Caps:
    """Largest group order handled by the resolution engine, per ring kind."""
    integral: int = 120
    modular: int = 720  # S_6 through a resolution certified mod p, degrees <= 2
    rational: int = 120  # above this, Q uses the averaging argument (H_d = 0, d > 0)


def _gen_map(n: int, length: int, ring: str = "Z") -> list:
    """Generator map F(S_n) -> F(S_{n+1}) covering the shift."""
    big = resolution_over(n + 1, ring, length)
    small = resolution_over(n, ring, length)
    if big.seed is None:
        return [[0]] + [[] for _ in range(length)]
    src = big.seed.source
    if src.seed is not None and src.seed.source is not small:
        raise RuntimeError("seeded resolution does not come from S_n")
    gm = big.seed.gens
    for k in range(length + 1):
        if len(gm[k]) != small.ranks[k]:
            raise RuntimeError(f"generator map in degree {k} has the wrong size")
    return gm


def chain_stabilisation(cx: TwistedComplex, cx1: TwistedComplex, iota: IntMatrix, k: int, gm) -> AbMap:
    m, m1 = cx.module.rank, cx1.module.rank
    M = IntMatrix.zeros(cx1.C[k].ngens, cx.C[k].ngens)
    for j, j1 in enumerate(gm[k]):
        for r in range(m1):
            row = M.data[j1 * m1 + r]
            src = iota.data[r]
            for c in range(m):
                row[j * m + c] = src[c]
    return AbMap(cx.C[k], cx1.C[k], M, check=False)


def induced_map(H: HomologyGroup, H1: HomologyGroup, f: AbMap) -> AbMap:
    cols = [H1.class_of(f.apply(z)) for z in H.reps]
    M = IntMatrix.from_columns(cols, H1.group.ngens) if cols else IntMatrix.zeros(H1.group.ngens, 0)
    return AbMap(H.group, H1.group, M, check=False).reduced()


# ---------------------------------------------------------------------------
# left inverses

def left_inverse(phi: AbMap) -> Optional[AbMap]:
    """Some rho with rho o phi = id, or None.  Both groups must be diagonal."""
    A, B = phi.source, phi.target
    d, e = A.diagonal, B.diagonal
    if d is None or e is None:
        raise ValueError("left_inverse needs diagonal presentations")
    a, b = len(d), len(e)
    if a == 0:
        return AbMap.zero(B, A)
    # rho[i][j] = c_ij * y_ij with c_ij making rho well defined on Z/e_j
    coef = {}
    for i in range(a):
        for j in range(b):
            if e[j] == 0:
                coef[(i, j)] = 1
            elif d[i] == 0:
                continue
            else:
                coef[(i, j)] = d[i] // gcd(d[i], e[j])
    yvars = sorted(coef)
    zvars = [(i, k) for i in range(a) if d[i] for k in range(a)]
    nv = len(yvars) + len(zvars)
    rows, rhs = [], []
    P = phi.matrix
    for i in range(a):
        for k in range(a):
            row = [0] * nv
            for v, (ii, j) in enumerate(yvars):
                if ii == i:
                    row[v] = coef[(ii, j)] * P.data[j][k]
            if d[i]:
                row[len(yvars) + zvars.index((i, k))] = -d[i]
            rows.append(row)
            rhs.append(1 if i == k else 0)
    if nv == 0:
        return None
    sol = solve_integer(IntMatrix(rows, len(rows), nv), rhs)
    if sol is None:
        return None
    R = IntMatrix.zeros(a, b)
    for v, (i, j) in enumerate(yvars):
        R.data[i][j] = coef[(i, j)] * sol[v]
    rho = AbMap(B, A, R, check=False).reduced()
    if not (rho @ phi).equals(AbMap.identity(A)):
        raise RuntimeError("left inverse failed verification")
    return rho


def rational_rank(M: IntMatrix) -> int:
    rows = [[Fraction(x) for x in r] for r in M.data]
    rank, col = 0, 0
    ncols = M.cols
    while rank < len(rows) and col < ncols:
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col] / rows[rank][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank


def rational_left_inverse(M: IntMatrix):
    """Rational matrix L with L M = I (M of full column rank), else None."""
    m, n = M.rows, M.cols
    if n == 0:
        return []
    if rational_rank(M) < n:
        return None
    # L = (M^T M)^{-1} M^T
    MtM = [[sum(Fraction(M.data[k][i] * M.data[k][j]) for k in range(m)) for j in range(n)] for i in range(n)]
    inv = _inverse(MtM)
    L = [[sum(inv[i][k] * M.data[j][k] for k in range(n)) for j in range(m)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if sum(L[i][k] * M.data[k][j] for k in range(m)) != (1 if i == j else 0):
                raise RuntimeError("rational left inverse failed verification")
    return L


def _inverse(A):
    n = len(A)
    aug = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    for c in range(n):
        p = next(r for r in range(c, n) if aug[r][c] != 0)
        aug[c], aug[p] = aug[p], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


# ---------------------------------------------------------------------------
# tables

@dataclass
class StabilityCell:
    n: int  # source object; the map goes to n + 1
    d: int
    source: str
    target: str
    kind: str  # iso | split-injective | injective | not-injective
    split: Optional[bool]  # a left inverse was found (None: not computed)
    in_range: bool
    method: str  # resolution | averaging

    @property
    def ok(self) -> bool:
        if self.in_range and self.kind != "iso":
            return False
        return self.split is not False

    def record(self) -> str:
        return (f"n={self.n} d={self.d} source={self.source} target={self.target} map={self.kind} "
                f"split={'-' if self.split is None else ('yes' if self.split else 'no')} "
                f"in_range={'yes' if self.in_range else 'no'} method={self.method} "
                f"status={'ok' if self.ok else 'VIOLATION'}")


@dataclass
class HomologyTable:
    ring: str
    D: int
    groups: dict = field(default_factory=dict)  # (n, d) -> HomologyGroup or rational description
    maps: dict = field(default_factory=dict)  # (n, d) -> AbMap H_d(n) -> H_d(n+1)

    def describe(self, n: int, d: int) -> str:
        return self.groups[(n, d)].describe()


@dataclass
class StabilityReport:
    name: str
    ring: str
    degree: Optional[int]
    degree_source: str
    D: int
    n_max: int
    table: HomologyTable
    cells: list
    seconds: float = 0.0
    h0_mismatch: list = field(default_factory=list)  # n where H_0 differs from the coinvariants

    @property
    def violations(self) -> list:
        return [c for c in self.cells if not c.ok]

    @property
    def ok(self) -> bool:
        return not self.violations and not self.h0_mismatch

    def in_range_cells(self) -> list:
        return [c for c in self.cells if c.in_range]

    def lines(self) -> list[str]:
        out = [f"stability report for {self.name}",
               f"ring {self.ring}, degree {self.degree} ({self.degree_source}), D={self.D}, n<={self.n_max}",
               "predicted isomorphism range: d <= (n - degree)/2; split-injective everywhere"]
        hdr = "n".rjust(3) + "".join(f"  H_{d}".ljust(14) for d in range(self.D + 1))
        out.append(hdr)
        for n in range(self.n_max + 1):
            row = str(n).rjust(3)
            for d in range(self.D + 1):
                g = self.table.groups.get((n, d))
                row += "  " + (g.describe() if g is not None else "?").ljust(12)
            out.append(row)
        out.append("maps:")
        for c in self.cells:
            flag = "in range" if c.in_range else "outside"
            split = {None: "split not checked", True: "split", False: "NOT split"}[c.split]
            status = "" if c.ok else "  <-- VIOLATION"
            out.append(f"  H_{c.d}: n={c.n}->{c.n + 1}  {c.source} -> {c.target}  {c.kind}, {split}, {flag}{status}")
        out.append("H_0 = coinvariants: " + ("yes for every n" if not self.h0_mismatch
                                              else f"MISMATCH at n in {self.h0_mismatch}"))
        out.append(f"result: {'PASS' if self.ok else 'FAIL'} ({len(self.cells)} maps, "
                   f"{len(self.in_range_cells())} in range, {len(self.violations)} violations)")
        return out

    def records(self) -> list[str]:
        return [c.record() for c in self.cells]


def in_stable_range(n: int, d: int, deg: int) -> bool:
    return 2 * d <= n - deg


def _classify(phi: AbMap, ring: str):
    kind, _ = parse_ring(ring)
    A, B = phi.source, phi.target
    if kind == "Q":
        M = _free_block(phi)
        r = rational_rank(M) if M.cols else 0
        inj = r == A.rank
        surj = r == B.rank
        split = rational_left_inverse(M) is not None if inj else False
        return ("iso" if inj and surj else ("split-injective" if split else "not-injective")), split
    inj = phi.is_injective()
    if inj and phi.is_surjective():
        return "iso", True
    if not inj:
        return "not-injective", False
    rho = left_inverse(phi)
    return ("split-injective" if rho is not None else "injective"), rho is not None


def _free_block(phi: AbMap) -> IntMatrix:
    dA, dB = phi.source.diagonal, phi.target.diagonal
    cols = [i for i, k in enumerate(dA) if k == 0]
    rows = [i for i, k in enumerate(dB) if k == 0]
    return phi.matrix.submatrix(rows, cols)


def _module(T: TruncatedFunctor, n: int, ring: str) -> GModule:
    return module_over_ring(GModule.from_functor(T, n), ring)


def _averaging_groups(M: GModule, ring: str, D: int) -> list[HomologyGroup]:
    """H_0 = coinvariants and H_d = 0 for d > 0, valid when |G| is invertible in the ring."""
    C, q = M.coinvariants()
    ident = AbMap.identity(M.carrier)
    reps = [preimage_element(q, [int(i == t) for i in range(C.ngens)]) for t in range(C.ngens)]
    out = [HomologyGroup(0, C, ring, ident, q, reps)]
    Z = FgAbGroup.zero()
    for d in range(1, D + 1):
        z = AbMap.zero(Z, Z)
        out.append(HomologyGroup(d, Z, ring, z, z, []))
    return out


def stabilisation_maps(T: TruncatedFunctor, ring: str, D: int, n_max: int, caps: Caps = Caps(),
                       check_chain_map: bool = True):
    """Homology groups for n <= n_max and maps for n < n_max."""
    kind, p = parse_ring(ring)
    table = HomologyTable(ring, D)
    complexes, methods = {}, {}
    length = max(D + 1, 2)
    cap = {"Z": caps.integral, "Fp": caps.modular, "Q": caps.rational}[kind]
    for n in range(n_max + 1):
        order = factorial(n)
        if order > cap and not maschke_applies(order, ring):
            raise CapExceeded(f"|S_{n}| = {order} exceeds the {kind} cap {cap}; lower the truncation or degree")
        if order <= cap and kind == "Fp" and n > INTEGRAL_LIMIT and length > 3:
            raise CapExceeded(f"over {ring}, S_{n} is resolved through degree 3 only; use D <= 2")
    for n in range(n_max + 1):
        order = factorial(n)
        M = _module(T, n, ring)
        if order <= cap:
            try:
                res = resolution_over(n, ring, length)
            except ResolutionError as e:
                raise CapExceeded(str(e)) from None
            cx = TwistedComplex(res, M, D + 1)
            complexes[n] = cx
            methods[n] = "resolution"
            for d in range(D + 1):
                table.groups[(n, d)] = cx.homology(d, ring)
        elif maschke_applies(order, ring):
            complexes[n] = M
            methods[n] = "averaging"
            for d, H in enumerate(_averaging_groups(M, ring, D)):
                table.groups[(n, d)] = H
        else:
            raise CapExceeded(f"|S_{n}| = {order} exceeds the {kind} cap {cap}; lower the truncation or degree")
    for n in range(n_max):
        iota = T.gen(sg.IOTA(n)).matrix
        a, b = complexes[n], complexes[n + 1]
        if methods[n] == methods[n + 1] == "resolution":
            gm = _gen_map(n, length, ring)
            if check_chain_map:
                _check_chain_map(a, b, iota, gm, D + 1)
            for d in range(D + 1):
                f = chain_stabilisation(a, b, iota, d, gm)
                table.maps[(n, d)] = induced_map(table.groups[(n, d)], table.groups[(n + 1, d)], f)
        else:
            # degree 0 chains are the carriers themselves
            ca = a.module.carrier if isinstance(a, TwistedComplex) else a.carrier
            cb = b.module.carrier if isinstance(b, TwistedComplex) else b.carrier
            f = AbMap(ca, cb, iota, check=False)
            table.maps[(n, 0)] = induced_map(table.groups[(n, 0)], table.groups[(n + 1, 0)], f)
            for d in range(1, D + 1):
                table.maps[(n, d)] = AbMap.zero(table.groups[(n, d)].group, table.groups[(n + 1, d)].group)
    return table, methods


def _check_chain_map(a: TwistedComplex, b: TwistedComplex, iota: IntMatrix, gm, top: int):
    for k in range(1, top + 1):
        fk = chain_stabilisation(a, b, iota, k, gm)
        fk1 = chain_stabilisation(a, b, iota, k - 1, gm)
        if not (b.d[k] @ fk).equals(fk1 @ a.d[k]):
            raise NotEquivariant(f"coefficient map T(iota_{a.module.group.n}) is not equivariant "
                                 f"(chain map fails in degree {k})")


def stability_report(T: TruncatedFunctor, D: int = 2, ring: Optional[str] = None, n_max: Optional[int] = None,
                     degree_bound: Optional[int] = None, caps: Caps = Caps()) -> StabilityReport:
    t0 = time.perf_counter()
    ring = ring or T.ring
    n_max = T.N if n_max is None else min(n_max, T.N)
    if degree_bound is not None:
        deg, src = degree_bound, "supplied bound"
    else:
        dr = functor_degree(T)
        if not dr.determinate:
            raise ValueError(f"degree of {T.name or 'T'} is not determinate ({dr}); supply a bound")
        deg, src = dr.value, "computed"
    table, methods = stabilisation_maps(T, ring, D, n_max, caps)
    cells = []
    for (n, d), phi in sorted(table.maps.items()):
        A, B = table.groups[(n, d)], table.groups[(n + 1, d)]
        kind, split = _classify(phi, ring)
        method = "resolution" if methods[n] == methods[n + 1] == "resolution" else "averaging"
        cells.append(StabilityCell(n, d, A.describe(), B.describe(), kind, split,
                                   in_stable_range(n, d, max(deg, 0)), method))
    mismatch = [n for n in range(n_max + 1)
                if not same_homology(table.groups[(n, 0)].group, coinvariant_group(_module(T, n, ring), ring), ring)]
    return StabilityReport(T.name or "T", ring, deg, src, D, n_max, table, cells,
                           time.perf_counter() - t0, mismatch)
