"""Modules over Young subgroups of S_n, carried by f.g. abelian groups.

The action is given on the adjacent-transposition generators by integer
matrices (lifts of AbMaps on the carrier); the action of every group element
is obtained by multiplying along a generator word.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from ..functor import TruncatedFunctor
from ..linalg import (AbMap, FgAbGroup, IntMatrix, cokernel, direct_sum_groups, factor_through,
                      hstack, parse_ring)
from .. import sigma as sg
from .groups import PermGroup, simple_transposition


class ModuleError(ValueError):
    pass


class GModule:
    def __init__(self, group: PermGroup, carrier: FgAbGroup, gen_action: list, name: str = ""):
        if carrier.diagonal is None:
            carrier, _, _ = carrier.simplify()
        if len(gen_action) != len(group.gens):
            raise ModuleError(f"need {len(group.gens)} generator matrices, got {len(gen_action)}")
        m = carrier.ngens
        acts = []
        for M in gen_action:
            M = M.matrix if isinstance(M, AbMap) else M
            if M.shape != (m, m):
                raise ModuleError(f"action matrix has shape {M.shape}, expected {(m, m)}")
            acts.append(M)
        self.group = group
        self.carrier = carrier
        self.gen_action = acts
        self.name = name
        self._rho = None

    @property
    def rank(self) -> int:
        return self.carrier.ngens

    def __repr__(self):
        return f"GModule({self.name or '?'} over {self.group}, carrier {self.carrier.describe()})"

    # -- construction ---------------------------------------------------
    @classmethod
    def from_functor(cls, T: TruncatedFunctor, n: int, group: PermGroup | None = None) -> GModule:
        group = group or PermGroup.symmetric(n)
        if group.n != n:
            raise ModuleError(f"group acts on {group.n} points, object is {n}")
        acts = [T.gen(sg.SIGMA(i, n)).matrix for i in group.gens]
        return cls(group, T.group(n), acts, name=f"{T.name or 'T'}_{n}")

    def restrict(self, H: PermGroup) -> GModule:
        if H.n != self.group.n or not set(H.gens) <= set(self.group.gens):
            raise ModuleError(f"{H} is not a parabolic subgroup of {self.group}")
        pos = {g: a for a, g in enumerate(self.group.gens)}
        return GModule(H, self.carrier, [self.gen_action[pos[i]] for i in H.gens], name=self.name)

    def submodule(self, inclusion: AbMap, name: str = "") -> GModule:
        """The action restricted to an invariant subgroup given by an injective inclusion."""
        if not inclusion.target.same_presentation(self.carrier):
            raise ModuleError("inclusion must land in the carrier")
        acts = []
        for M in self.gen_action:
            moved = AbMap(self.carrier, self.carrier, M, check=False) @ inclusion
            try:
                acts.append(factor_through(moved, inclusion).matrix)
            except ValueError:
                raise ModuleError("subgroup is not invariant under the action") from None
        return GModule(self.group, inclusion.source, acts, name=name or self.name)

    def tensor_field(self, p: int) -> GModule:
        """Carrier tensored with Z/p."""
        d = self.carrier.diagonal
        inv = [p if k == 0 else _gcd(k, p) for k in d]
        keep = [i for i, k in enumerate(inv) if k != 1]
        C = FgAbGroup.from_invariants([inv[i] for i in keep])
        acts = [M.submatrix(keep, keep) for M in self.gen_action]
        return GModule(self.group, C, acts, name=f"{self.name}/p")

    # -- action -----------------------------------------------------------
    @property
    def rho(self) -> np.ndarray:
        """rho[g] = matrix of group element g (object array, exact integers)."""
        if self._rho is None:
            G = self.group
            m = self.rank
            out = np.empty((G.order, m, m), dtype=object)
            out[0] = np.identity(m, dtype=object) if m else np.zeros((0, 0), dtype=object)
            gens = [np.array(M.data, dtype=object).reshape(m, m) for M in self.gen_action]
            d = self.carrier.diagonal
            for g in range(1, G.order):
                k, h = G.parent[g]
                A = gens[k].dot(out[h]) if m else out[h]
                out[g] = _reduce_rows(A, d)
            self._rho = out
        return self._rho

    @property
    def rho_inv(self) -> np.ndarray:
        return self.rho[self.group.inverse]

    def act(self, g: int, v) -> list[int]:
        return [int(x) for x in self.rho[g].dot(np.array(v, dtype=object))] if self.rank else []

    # -- checks -----------------------------------------------------------
    def check(self) -> tuple[bool, str]:
        """Generator matrices are well defined and satisfy the Coxeter relations."""
        C = self.carrier
        ident = AbMap.identity(C)
        maps = []
        for k, M in enumerate(self.gen_action):
            f = AbMap(C, C, M, check=False)
            if not f.is_well_defined():
                return False, f"action of s_{self.group.gens[k]} is not well defined"
            maps.append(f)
        for w in self.group.coxeter_relations():
            prod = ident
            for x in w:
                prod = maps[x] @ prod
            if not prod.equals(ident):
                word = " ".join(f"s{self.group.gens[x]}" for x in w)
                return False, f"relation {word} = 1 fails on the carrier"
        return True, "ok"

    def coinvariants(self):
        """(C, quotient carrier -> C) with C = carrier / <g x - x>."""
        C = self.carrier
        m = C.ngens
        I = IntMatrix.identity(m)
        if not self.gen_action:
            return cokernel(AbMap.zero(FgAbGroup.zero(), C))
        big = hstack(*[M - I for M in self.gen_action])
        src = FgAbGroup.free(big.cols)
        return cokernel(AbMap(src, C, big, check=False))


def _gcd(a, b):
    from math import gcd
    return gcd(a, b)


def _reduce_rows(A, d):
    if not len(d) or not any(d):
        return A
    A = A.copy()
    for i, k in enumerate(d):
        if k:
            A[i] = A[i] % k
    return A


def induced_layer_module(T: TruncatedFunctor, n: int, k: int, method: str = "projector") -> GModule:
    """W_k = sum over |Q| = k of the cross-effects T_n[Q^delta], as an S_n-module.

    The carrier is the external direct sum; the action of s moves the summand
    of Q to the summand of sQ.  The sum map into T_n is injective because the
    decomposition is direct.
    """
    full = GModule.from_functor(T, n)
    pieces = [T.cross_effect(n, [{q} for q in Q], method) for Q in combinations(range(1, n + 1), k)]
    W = direct_sum_groups([p.group for p in pieces])
    incs = [p.inclusion for p in pieces]
    total = AbMap(W, T.group(n), hstack(*[i.matrix for i in incs]) if incs else IntMatrix.zeros(T.group(n).ngens, 0),
                  check=False)
    if not total.is_injective():
        raise ModuleError(f"layer {k} of T_{n} is not a direct sum of its cross-effects")
    mod = full.submodule(total, name=f"W_{k}({T.name or 'T'}_{n})")
    return mod


def top_piece_module(T: TruncatedFunctor, n: int, k: int, method: str = "projector") -> GModule:
    """T_n^k as a module over S_{n-k} x S_k."""
    H = PermGroup.young(n, k)
    full = GModule.from_functor(T, n).restrict(H)
    piece = T.cross_effect(n, [{i} for i in range(n - k + 1, n + 1)], method)
    return full.submodule(piece.inclusion, name=f"T^{k}({T.name or 'T'}_{n})")


def trivial_module(group: PermGroup, A: FgAbGroup | None = None) -> GModule:
    A = A or FgAbGroup.free(1)
    I = IntMatrix.identity(A.ngens)
    return GModule(group, A, [I] * len(group.gens), name=A.describe())


def permutation_module(n: int) -> GModule:
    """Z^n with S_n permuting the coordinates."""
    G = PermGroup.symmetric(n)
    acts = []
    for i in G.gens:
        p = simple_transposition(i, n)
        acts.append(IntMatrix([[1 if p[c] == r + 1 else 0 for c in range(n)] for r in range(n)], n, n))
    return GModule(G, FgAbGroup.free(n), acts, name=f"Z^{n}")


def module_over_ring(M: GModule, ring: str) -> GModule:
    kind, p = parse_ring(ring)
    if kind == "Fp":
        return M.tensor_field(p)
    return M
