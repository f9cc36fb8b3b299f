"""Free Z[G]-resolutions of Z for Young subgroups G of S_n.

Degrees 0..2 come from the Coxeter presentation: one generator e_x of F_1 per
adjacent transposition with d(e_x) = x - 1, one generator of F_2 per Coxeter
relator r with d(e_r) = sum_x (Fox derivative dr/dx) e_x.  Higher degrees are
built from kernels: F_k is free on Z[G]-module generators of ker d_{k-1},
chosen greedily (rank certified mod a prime) and then certified integrally by
checking that the image of d_k is a saturated lattice.

The resolution of G = <s_i : i in J> is seeded by the resolution of the
parabolic subgroup that fixes the point 1, transported by the shift
g -> 1 (+) g.  The seed generators come first in every degree, so the chain
map from the resolution of S_n to that of S_{n+1} covering the shift sends
generator j to generator j.  This is the chain-level stabilisation map.

A module element of F_k = Z[G]^r is a dict {(generator, group element): coeff}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from ..linalg import IntMatrix, integer_kernel, sparse_elementary_divisors
from ..linalg.modp import Echelon
from .groups import PermGroup, shift_perm

PRIME = 32749  # rank certificates; products stay exact in float64
INTEGRAL_LIMIT = 5  # largest n with an integrally certified resolution of S_n


class ResolutionError(RuntimeError):
    pass


@dataclass
class FreeResolution:
    group: PermGroup
    ranks: list  # r_0, ..., r_L
    boundary: list  # boundary[k][j] for k >= 1: image of generator j of F_k in F_{k-1}
    relators: list  # Coxeter relator words (generator positions), one per generator of F_2
    seed: "SeedMap | None" = None
    stats: dict = field(default_factory=dict)

    @property
    def length(self) -> int:
        return len(self.ranks) - 1

    def act(self, h: int, v: dict) -> dict:
        t = self.group.table
        return {(j, int(t[h, g])): c for (j, g), c in v.items()}

    def apply_boundary(self, k: int, v: dict) -> dict:
        """d_k of a module element of F_k."""
        out = {}
        t = self.group.table
        for (j, g), c in v.items():
            for (i, h), e in self.boundary[k][j].items():
                key = (i, int(t[g, h]))
                val = out.get(key, 0) + c * e
                if val:
                    out[key] = val
                else:
                    out.pop(key, None)
        return out

    def check_complex(self) -> bool:
        """d_{k-1} d_k = 0 and d_1 lands in the augmentation ideal."""
        for j in range(self.ranks[1] if self.length >= 1 else 0):
            if sum(self.boundary[1][j].values()) != 0:
                return False
        for k in range(2, self.length + 1):
            for j in range(self.ranks[k]):
                if self.apply_boundary(k - 1, self.boundary[k][j]):
                    return False
        return True

    def z_columns(self, k: int) -> list[dict]:
        """Columns of d_k over Z, indexed (j, g) -> j*|G| + g, rows (i, h) -> i*|G| + h."""
        N = self.group.order
        t = self.group.table
        cols = []
        for j in range(self.ranks[k]):
            terms = list(self.boundary[k][j].items())
            for g in range(N):
                cols.append({i * N + int(t[g, h]): c for (i, h), c in terms})
        return cols

    def tensor_boundary(self, k: int, rho_inv: np.ndarray) -> np.ndarray:
        """Matrix of d_k (x)_G M on M^{r_k} -> M^{r_{k-1}}.

        g e_j (x) m = e_j (x) g^{-1} m, so the (i, j) block is
        sum_g c_{ji}[g] rho(g^{-1}).
        """
        m = rho_inv.shape[1]
        out = np.zeros((m * self.ranks[k - 1], m * self.ranks[k]), dtype=object)
        for j in range(self.ranks[k]):
            blocks = {}
            for (i, g), c in self.boundary[k][j].items():
                b = blocks.get(i)
                term = c * rho_inv[g]
                blocks[i] = term if b is None else b + term
            for i, b in blocks.items():
                out[i * m:(i + 1) * m, j * m:(j + 1) * m] = b
        return out


@dataclass
class SeedMap:
    """Chain map from a smaller resolution: element map and per-degree generator maps."""
    source: FreeResolution
    elem: np.ndarray  # group index in the source -> group index in the target
    gens: list  # gens[k][j] = target generator of F_k hit by source generator j


# ---------------------------------------------------------------------------
# modular echelon used for greedy generator selection

class _ModEchelon:
    def __init__(self, dim: int, p: int = PRIME):
        self.p = p
        self.dim = dim
        self.rows = np.zeros((0, dim))
        self.piv: list[int] = []

    @property
    def rank(self) -> int:
        return len(self.piv)

    def add_block(self, B: np.ndarray) -> int:
        p = self.p
        B = np.mod(B, p)
        if self.piv:
            B = np.mod(B - np.mod(B[:, self.piv] @ self.rows, p), p)
        new_rows, new_piv = [], []
        work = B
        while work.shape[0]:
            nz = np.nonzero(work)
            if nz[0].size == 0:
                break
            i, c = int(nz[0][0]), int(nz[1][0])
            row = np.mod(work[i] * pow(int(work[i, c]), -1, p), p)
            work = np.delete(work, i, axis=0)
            if work.shape[0]:
                work = np.mod(work - np.outer(work[:, c], row), p)
            for r in range(len(new_rows)):
                f = new_rows[r][c]
                if f:
                    new_rows[r] = np.mod(new_rows[r] - f * row, p)
            new_rows.append(row)
            new_piv.append(c)
        if not new_rows:
            return 0
        N = np.array(new_rows)
        if self.piv:
            self.rows = np.mod(self.rows - np.mod(self.rows[:, new_piv] @ N, p), p)
        self.rows = np.vstack([self.rows, N])
        self.piv.extend(new_piv)
        return len(new_piv)


def _orbit_block(res_group: PermGroup, v: dict, dim: int) -> np.ndarray:
    N = res_group.order
    t = res_group.table
    B = np.zeros((N, dim))
    rows = np.arange(N)
    for (j, g), c in v.items():
        B[rows, j * N + t[:, g]] += c
    return B


# ---------------------------------------------------------------------------
# construction

def _fox_boundary(G: PermGroup, word) -> dict:
    out = {}
    prefix = 0
    t = G.table
    gidx = [G.gen_index(k) for k in range(len(G.gens))]
    for x in word:
        key = (x, prefix)
        out[key] = out.get(key, 0) + 1
        prefix = int(t[prefix, gidx[x]])
    return {k: v for k, v in out.items() if v}


def _low_degrees(G: PermGroup):
    boundary = [[]]
    b1 = []
    for k in range(len(G.gens)):
        s = G.gen_index(k)
        b1.append({(0, s): 1, (0, 0): -1})
    boundary.append(b1)
    rels = G.coxeter_relations()
    boundary.append([_fox_boundary(G, w) for w in rels])
    return boundary, rels


def _transport(res: FreeResolution, G: PermGroup, elem: np.ndarray) -> list:
    """Boundaries of res rewritten along an element map with generators kept in place."""
    out = [[]]
    for k in range(1, res.length + 1):
        out.append([{(i, int(elem[g])): c for (i, g), c in v.items()} for v in res.boundary[k]])
    return out


def _embed(v: dict, elem: np.ndarray, genmap: list) -> dict:
    return {(genmap[i], int(elem[g])): c for (i, g), c in v.items()}


def _saturated(res: FreeResolution, k: int, cancel=None) -> bool:
    cols = res.z_columns(k)
    dim = res.group.order * res.ranks[k - 1]
    divs = sparse_elementary_divisors(cols, dim, cancel)
    return all(d == 1 for d in divs)


def _kernel_basis(res: FreeResolution, k: int) -> list[dict]:
    """Z-basis of ker d_k as module elements (used when the cheap candidates fall short)."""
    N = res.group.order
    cols = res.z_columns(k)
    rows = N * res.ranks[k - 1]
    A = IntMatrix.zeros(rows, len(cols))
    for j, col in enumerate(cols):
        for i, c in col.items():
            A.data[i][j] = c
    K = integer_kernel(A)
    out = []
    for c in range(K.cols):
        v = {}
        for idx, x in enumerate(K.column(c)):
            if x:
                v[(idx // N, idx % N)] = x
        out.append(v)
    return out


def _relator_map(sub: PermGroup, G: PermGroup, sub_rels, G_rels) -> list[int]:
    pos = {g: a for a, g in enumerate(G.gens)}
    where = {w: r for r, w in enumerate(G_rels)}
    out = []
    for w in sub_rels:
        ww = tuple(pos[sub.gens[x]] for x in w)
        out.append(where[ww])
    return out


@lru_cache(maxsize=None)
def resolution(n: int, gens: tuple, length: int, cancel=None) -> FreeResolution:
    """Free resolution of Z over Z[<s_i : i in gens>] <= S_n, through degree ``length``."""
    G = PermGroup(n, gens)
    if gens and min(gens) > 1:
        return _shifted(n, gens, length)
    if not gens:
        ranks = [1] + [0] * length
        return FreeResolution(G, ranks[:length + 1], [[]] + [[] for _ in range(length)], [])
    boundary, rels = _low_degrees(G)
    ranks = [1, len(G.gens), len(rels)]
    # seed: the parabolic fixing the point 1, whose generators are gens[1:]
    seed_gens = tuple(gens[1:])
    seed = resolution(n, seed_gens, length, cancel)
    S = seed.group
    elem = np.array([G.index[p] for p in S.elements], dtype=np.int64)
    gmap = [[0], [a + 1 for a in range(len(S.gens))], _relator_map(S, G, seed.relators, rels)]
    res = FreeResolution(G, ranks[:length + 1], boundary[:length + 1], rels)
    res.stats["candidates"] = {}
    for k in range(3, length + 1):
        _extend(res, k, seed, elem, gmap, cancel)
    res.ranks = res.ranks[:length + 1]
    res.seed = SeedMap(seed, elem, gmap[:length + 1])
    return res


def _extend(res: FreeResolution, k: int, seed: FreeResolution, elem, gmap, cancel):
    """Add F_k: generators of ker d_{k-1}."""
    G = res.group
    N = G.order
    dim = N * res.ranks[k - 1]
    # exactness: rank d_{k-1} = rank ker d_{k-2}; rank d_1 = |G| - 1
    below = N - 1 if k - 2 == 1 else res.stats[("rank", k - 2)]
    prev_rank = N * res.ranks[k - 2] - below
    target = dim - prev_rank  # rank of ker d_{k-1} = rank of d_k
    res.stats[("rank", k - 1)] = prev_rank
    ech = _ModEchelon(dim)
    gens_k = []
    seed_ids = []
    for v in seed.boundary[k]:
        w = _embed(v, elem, gmap[k - 1])
        seed_ids.append(len(gens_k))
        gens_k.append(w)
        ech.add_block(_orbit_block(G, w, dim))
    gmap.append(seed_ids)
    used = {"seed": len(seed_ids), "parabolic": 0, "kernel": 0}
    if ech.rank < target and k == 3:
        for v in _parabolic_candidates(res):
            if ech.add_block(_orbit_block(G, v, dim)):
                gens_k.append(v)
                used["parabolic"] += 1
            if ech.rank == target:
                break
    res.boundary.append(gens_k)
    res.ranks.append(len(gens_k))
    if ech.rank < target or not _saturated(res, k, cancel):
        basis = _kernel_basis(res, k - 1)
        for v in basis:
            if ech.rank < target:
                if not ech.add_block(_orbit_block(G, v, dim)):
                    continue
            gens_k.append(v)
            used["kernel"] += 1
            res.ranks[k] = len(gens_k)
            if ech.rank == target and _saturated(res, k, cancel):
                break
        else:
            if ech.rank < target or not _saturated(res, k, cancel):
                raise ResolutionError(f"could not complete degree {k} for {G}")
    res.stats["candidates"][k] = used


def _parabolic_candidates(res: FreeResolution):
    """Degree-3 generators of maximal parabolic subgroups, pushed into F_3 of G."""
    G = res.group
    for a in G.gens[1:]:
        sub = tuple(x for x in G.gens if x != a)
        sres = resolution(G.n, sub, 3)
        S = sres.group
        elem = np.array([G.index[p] for p in S.elements], dtype=np.int64)
        rmap = _relator_map(S, G, sres.relators, res.relators)
        for v in sres.boundary[3]:
            yield _embed(v, elem, rmap)


def _shifted(n: int, gens: tuple, length: int) -> FreeResolution:
    base = resolution(n - 1, tuple(i - 1 for i in gens), length)
    G = PermGroup(n, gens)
    elem = np.array([G.index[shift_perm(p)] for p in base.group.elements], dtype=np.int64)
    boundary = _transport(base, G, elem)
    res = FreeResolution(G, list(base.ranks), boundary, list(base.relators), stats=dict(base.stats))
    gm = [list(range(r)) for r in base.ranks]
    res.seed = SeedMap(base, elem, gm)
    return res


def symmetric_resolution(n: int, length: int) -> FreeResolution:
    return resolution(n, tuple(range(1, n)), length)


def young_resolution(n: int, k: int, length: int) -> FreeResolution:
    G = PermGroup.young(n, k)
    return resolution(n, G.gens, length)


# ---------------------------------------------------------------------------
# resolutions exact mod p

def _mod_p_column(col: dict, p: int):
    if p == 2:
        v = 0
        for r, x in col.items():
            if x & 1:
                v |= 1 << r
        return v
    return {r: x % p for r, x in col.items() if x % p}


def _orbit_columns(G: PermGroup, v: dict) -> list[dict]:
    t = G.table
    return [{(i, int(t[g, h])): c for (i, h), c in v.items()} for g in range(G.order)]


@lru_cache(maxsize=None)
def modular_symmetric_resolution(n: int, p: int, length: int) -> FreeResolution:
    """A resolution of S_n that is exact after reduction mod p, through degree 3.

    Up to INTEGRAL_LIMIT this is the integral resolution.  Beyond it, F_3 is
    assembled from the seed generators and the maximal parabolic candidates,
    keeping a candidate only when its orbit raises the rank of d_3 mod p, and
    is certified by rank_p d_3 = dim ker (d_2 mod p).  Degrees 0..2 are split
    exact over Z, so rank_p d_2 = rank_Z d_2.
    """
    if n <= INTEGRAL_LIMIT:
        return symmetric_resolution(n, length)
    if length > 3:
        raise ResolutionError(f"mod {p} resolution of S_{n} only reaches degree 3")
    gens = tuple(range(1, n))
    G = PermGroup(n, gens)
    boundary, rels = _low_degrees(G)
    res = FreeResolution(G, [1, len(G.gens), len(rels)][:length + 1], boundary[:length + 1], rels)
    seed = resolution(n, gens[1:], length)
    S = seed.group
    elem = np.array([G.index[q] for q in S.elements], dtype=np.int64)
    gmap = [[0], [a + 1 for a in range(len(S.gens))], _relator_map(S, G, seed.relators, rels)]
    res.stats["candidates"] = {}
    if length == 3:
        N = G.order
        target = N * len(rels) - (N * len(G.gens) - (N - 1))
        ech = Echelon(p)

        def add(v):
            before = ech.rank
            for col in _orbit_columns(G, v):
                ech.add(_mod_p_column({i * N + g: c for (i, g), c in col.items()}, p))
                if ech.rank == target:
                    break
            return ech.rank > before

        gens_3 = []
        for v in seed.boundary[3]:
            w = _embed(v, elem, gmap[2])
            gens_3.append(w)
            add(w)
        gmap.append(list(range(len(gens_3))))
        used = 0
        for v in _parabolic_candidates(res):
            if ech.rank == target:
                break
            if add(v):
                gens_3.append(v)
                used += 1
        if ech.rank != target:
            raise ResolutionError(f"degree 3 of the mod {p} resolution of S_{n} has rank {ech.rank}, need {target}")
        res.boundary.append(gens_3)
        res.ranks.append(len(gens_3))
        res.stats["candidates"][3] = {"seed": len(seed.boundary[3]), "parabolic": used, "kernel": 0}
        res.stats["certified"] = f"rank mod {p} of d_3 = {target}"
    res.seed = SeedMap(seed, elem, gmap[:length + 1])
    return res


def resolution_over(n: int, ring: str, length: int) -> FreeResolution:
    """The resolution of S_n used for homology over the ring (Z, Q or Fp:<p>)."""
    from ..linalg import parse_ring
    kind, p = parse_ring(ring)
    if kind == "Fp" and n > INTEGRAL_LIMIT:
        return modular_symmetric_resolution(n, p, length)
    return symmetric_resolution(n, length)
