"""Twisted homology H_d(G; M) from a free resolution, with explicit classes.

C_k = F_k (x)_G M = M^{r_k}.  Over Z the homology is computed with carrier
relations; over F_p the module is first tensored with Z/p; over Q the integral
answer is computed and only its free part is kept (Q is flat).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..linalg import (AbMap, FgAbGroup, IntMatrix, cokernel, direct_sum_groups, factor_through, kernel,
                      parse_ring, preimage_element)
from .gmodule import GModule, module_over_ring
from .resolution import INTEGRAL_LIMIT, FreeResolution, resolution, resolution_over


class HomologyError(RuntimeError):
    pass


@dataclass
class HomologyGroup:
    """H_d with a cycle representative for each generator and a class map."""
    degree: int
    group: FgAbGroup  # diagonal presentation
    ring: str
    cycles: AbMap  # Z_d -> C_d, injective
    quotient: AbMap  # Z_d -> group
    reps: list = field(default_factory=list)  # cycles in C_d, one per generator of group

    def class_of(self, c) -> list[int]:
        x = preimage_element(self.cycles, c)
        if x is None:
            raise HomologyError(f"chain is not a cycle in degree {self.degree}")
        return list(self.group.normalize(self.quotient.apply(x)))

    @property
    def rank(self) -> int:
        return self.group.rank

    def describe(self) -> str:
        kind, p = parse_ring(self.ring)
        if kind == "Q":
            r = self.group.rank
            return "0" if r == 0 else ("Q" if r == 1 else f"Q^{r}")
        return self.group.describe()

    def invariants(self):
        kind, _ = parse_ring(self.ring)
        if kind == "Q":
            return ((), self.group.rank)
        return self.group.invariants()


class TwistedComplex:
    """F_* (x)_G M through degree ``top``."""

    def __init__(self, res: FreeResolution, module: GModule, top: int):
        if res.group.n != module.group.n or res.group.gens != module.group.gens:
            raise HomologyError("resolution and module are over different groups")
        if res.length < top:
            raise HomologyError(f"resolution only reaches degree {res.length}, need {top}")
        self.res = res
        self.module = module
        self.top = top
        C = module.carrier
        self.C = [direct_sum_groups([C] * res.ranks[k]) for k in range(top + 1)]
        rho_inv = module.rho_inv
        self.d = [AbMap(self.C[0], FgAbGroup.zero(), IntMatrix.zeros(0, self.C[0].ngens), check=False)]
        for k in range(1, top + 1):
            A = res.tensor_boundary(k, rho_inv)
            M = IntMatrix([[int(x) for x in row] for row in A], A.shape[0], A.shape[1])
            self.d.append(AbMap(self.C[k], self.C[k - 1], M, check=False).reduced())

    def check(self) -> bool:
        return all((self.d[k - 1] @ self.d[k]).is_zero() for k in range(2, self.top + 1))

    def homology(self, deg: int, ring: str) -> HomologyGroup:
        if deg + 1 > self.top:
            raise HomologyError(f"degree {deg} needs chains through {deg + 1}")
        here = self.d[deg]
        K, inc = kernel(here)
        nxt = self.d[deg + 1]
        lift = factor_through(nxt, inc)
        H, q = cokernel(lift)
        reps = []
        for t in range(H.ngens):
            e = [0] * H.ngens
            e[t] = 1
            x = preimage_element(q, e)
            reps.append(inc.apply(x))
        return HomologyGroup(deg, H, ring, inc, q, reps)


def complex_for(module: GModule, top: int, ring: str = "Z") -> TwistedComplex:
    G = module.group
    if G.is_full_symmetric() and G.n > INTEGRAL_LIMIT:
        res = resolution_over(G.n, ring, max(top, 2))
    else:
        res = resolution(G.n, G.gens, max(top, 2))
    return TwistedComplex(res, module, top)


def twisted_homology(module: GModule, D: int, ring: str = "Z") -> list[HomologyGroup]:
    """[H_0, ..., H_D] of G with coefficients in the module, over the ring."""
    M = module_over_ring(module, ring)
    cx = complex_for(M, D + 1, ring)
    return [cx.homology(d, ring) for d in range(D + 1)]


def maschke_applies(order: int, ring: str) -> bool:
    """H_d(G; M) = 0 for d > 0 when |G| is invertible in the ring."""
    kind, p = parse_ring(ring)
    return kind == "Q" or (kind == "Fp" and order % p != 0)


def coinvariant_group(module: GModule, ring: str = "Z") -> FgAbGroup:
    M = module_over_ring(module, ring)
    C, _ = M.coinvariants()
    return C
