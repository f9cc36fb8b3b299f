"""Normalized bar complex: an independent route to H_d(G; M) for small G.

C_d is free on d-tuples of non-identity elements, tensored with M, and

    d(m[g1|...|gd]) = g1^{-1} m [g2|...|gd]
                      + sum_{0<i<d} (-1)^i m [...|g_i g_{i+1}|...]
                      + (-1)^d m [g1|...|g_{d-1}],

dropping tuples that contain the identity.  The chain groups grow like
(|G|-1)^d, so a budget on the size of the top chain group guards every call.
"""

from __future__ import annotations

from itertools import product

from ..linalg import FgAbGroup, parse_ring, sparse_elementary_divisors
from ..linalg.modp import Echelon
from .gmodule import GModule, module_over_ring

DEFAULT_BUDGET = {"Z": 20000, "Q": 20000, "Fp": 60000}


class BarCapExceeded(RuntimeError):
    pass


def bar_size(order: int, d: int, rank: int) -> int:
    return (order - 1) ** d * rank


def _boundary_columns(M: GModule, d: int):
    """Sparse columns of d_d : C_d -> C_{d-1}."""
    G = M.group
    N = G.order
    m = M.rank
    t = G.table
    inv = G.inverse
    rho = M.rho
    base = N - 1
    nonid = range(1, N)

    def index(tup):
        k = 0
        for g in tup:
            k = k * base + (g - 1)
        return k

    cols = []
    for tup in product(nonid, repeat=d):
        A = rho[int(inv[tup[0]])]  # g1^{-1}
        head = index(tup[1:])
        middle = []
        for i in range(1, d):
            g = int(t[tup[i - 1], tup[i]])
            if g:
                middle.append(((-1) ** i, index(tup[:i - 1] + (g,) + tup[i + 1:])))
        last = index(tup[:-1])
        sign_last = (-1) ** d
        for c in range(m):
            col = {}

            def add(r, v):
                x = col.get(r, 0) + v
                if x:
                    col[r] = x
                else:
                    col.pop(r, None)

            for r in range(m):
                v = int(A[r, c])
                if v:
                    add(head * m + r, v)
            for s, k in middle:
                add(k * m + c, s)
            add(last * m + c, sign_last)
            cols.append(col)
    return cols


def bar_homology(module: GModule, D: int, ring: str = "Z", budget: int | None = None) -> list[FgAbGroup]:
    """[H_0, ..., H_D] of the module's group via the normalized bar complex."""
    kind, p = parse_ring(ring)
    M = module_over_ring(module, ring)
    d = M.carrier.diagonal
    if kind in ("Z", "Q") and any(d):
        raise ValueError("the bar oracle needs a free carrier over Z or Q")
    budget = DEFAULT_BUDGET[kind] if budget is None else budget
    N, m = M.group.order, M.rank
    top = bar_size(N, D + 1, m)
    if top > budget:
        raise BarCapExceeded(f"bar complex needs {top} chains in degree {D + 1}, budget {budget}")
    dims = [bar_size(N, k, m) for k in range(D + 2)]
    ranks = [0]
    divisors = [[]]
    for k in range(1, D + 2):
        cols = _boundary_columns(M, k)
        if kind == "Fp" and p == 2:
            ech = Echelon(2)
            for col in cols:
                v = 0
                for r, x in col.items():
                    if x & 1:
                        v |= 1 << r
                ech.add(v)
            ranks.append(ech.rank)
            divisors.append([])
        elif kind == "Fp":
            # odd p: the F_p rank counts the integral divisors prime to p
            divs = sparse_elementary_divisors(cols, dims[k - 1])
            ranks.append(sum(1 for x in divs if x % p))
            divisors.append([])
        else:
            divs = sparse_elementary_divisors(cols, dims[k - 1])
            ranks.append(len(divs))
            divisors.append([x for x in divs if x > 1] if kind == "Z" else [])
    out = []
    for k in range(D + 1):
        free = dims[k] - ranks[k] - ranks[k + 1]
        if kind == "Fp":
            out.append(FgAbGroup.from_invariants([p] * free))
        else:
            out.append(FgAbGroup.from_invariants(sorted(divisors[k + 1]) + [0] * free))
    return out
