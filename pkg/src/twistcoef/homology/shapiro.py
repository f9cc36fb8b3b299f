"""Shapiro reduction for the layers of the cross-effect decomposition.

The k-th layer W_k = sum_{|Q|=k} T_n[Q^delta] of T_n is induced from the
S_{n-k} x S_k-module T_n^k = T_n[{n-k+1..n}^delta], so

    H_*(S_n; W_k) = H_*(S_{n-k} x S_k; T_n^k).

``shapiro_reduce`` computes both sides independently (the left side over the
big group, the right side over the Young subgroup) and, when the bar complex
fits its budget, a third time from the bar complex on the induced module.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from ..functor import TruncatedFunctor
from ..linalg import FgAbGroup, parse_ring
from .bar import BarCapExceeded, bar_homology
from .gmodule import induced_layer_module, top_piece_module
from .twisted import twisted_homology


def same_homology(a: FgAbGroup, b: FgAbGroup, ring: str) -> bool:
    kind, _ = parse_ring(ring)
    if kind == "Q":
        return a.rank == b.rank
    return a.isomorphic(b)


def describe_over(G: FgAbGroup, ring: str) -> str:
    kind, _ = parse_ring(ring)
    if kind == "Q":
        r = G.rank
        return "0" if r == 0 else ("Q" if r == 1 else f"Q^{r}")
    return G.describe()


@dataclass
class ShapiroCell:
    n: int
    k: int
    d: int
    induced: str  # H_d(S_n; W_k), resolution
    young: str  # H_d(S_{n-k} x S_k; T_n^k), resolution
    bar: str | None  # H_d(S_n; W_k), bar complex (None: over budget)
    agree: bool

    def record(self) -> str:
        return (f"n={self.n} k={self.k} d={self.d} induced={self.induced} young={self.young} "
                f"bar={self.bar or '-'} agree={'yes' if self.agree else 'no'}")


@dataclass
class ShapiroCertificate:
    name: str
    ring: str
    n: int
    k: int
    layer_rank: int
    piece_rank: int
    cells: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.agree for c in self.cells) and self.layer_rank == comb(self.n, self.k) * self.piece_rank

    @property
    def bar_cells(self) -> int:
        return sum(1 for c in self.cells if c.bar is not None)


def shapiro_reduce(T: TruncatedFunctor, n: int, k: int, D: int = 2, ring: str | None = None,
                   use_bar: bool = True, bar_budget: int | None = None) -> ShapiroCertificate:
    ring = ring or T.ring
    W = induced_layer_module(T, n, k)
    P = top_piece_module(T, n, k)
    cert = ShapiroCertificate(T.name or "T", ring, n, k, W.rank, P.rank)
    left = twisted_homology(W, D, ring)
    right = twisted_homology(P, D, ring)
    bar = None
    if use_bar:
        try:
            bar = bar_homology(W, D, ring, bar_budget)
        except BarCapExceeded:
            bar = None
    for d in range(D + 1):
        a, b = left[d].group, right[d].group
        ok = same_homology(a, b, ring)
        bd = None
        if bar is not None:
            bd = describe_over(bar[d], ring)
            ok = ok and same_homology(bar[d], a, ring)
        cert.cells.append(ShapiroCell(n, k, d, describe_over(a, ring), describe_over(b, ring), bd, ok))
    return cert


def bar_cells(T: TruncatedFunctor, n: int, k: int, D: int, ring: str | None = None,
              budget: int | None = None):
    """Degrees d <= D for which the bar complex on W_k fits the budget."""
    ring = ring or T.ring
    W = induced_layer_module(T, n, k)
    for top in range(D, -1, -1):
        try:
            return top, bar_homology(W, top, ring, budget)
        except BarCapExceeded:
            continue
    return -1, []
