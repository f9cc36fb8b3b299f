"""Linear algebra over the prime field F_p.

Rows are sparse dicts for odd p and Python-int bitsets for p = 2, which is
what the large mod-2 resolutions need.
"""

from __future__ import annotations

import heapq
from typing import Sequence

from .matrix import IntMatrix


def _rows_of(A, p):
    if isinstance(A, IntMatrix):
        data, ncols = A.data, A.cols
    else:
        data = A
        ncols = len(A[0]) if A else 0
    if p == 2:
        out = []
        for r in data:
            v = 0
            for j, x in enumerate(r):
                if x & 1:
                    v |= 1 << j
            out.append(v)
        return out, ncols
    return [{j: x % p for j, x in enumerate(r) if x % p} for r in data], ncols


class Echelon:
    """Incrementally built reduced row space over F_p.

    ``add(v)`` reduces v against the stored rows and keeps it if it is new;
    it returns True when the dimension went up.
    """

    def __init__(self, p: int):
        self.p = p
        self.pivots = {}  # pivot column -> row

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, v):
        p = self.p
        if p == 2:
            while v:
                c = (v & -v).bit_length() - 1
                r = self.pivots.get(c)
                if r is None:
                    return v
                v ^= r
            return v
        # clear pivot columns from the left; stop at the first free leading column
        v = dict(v)
        heap = list(v)
        heapq.heapify(heap)
        while heap:
            c = heapq.heappop(heap)
            f = v.get(c)
            if f is None:
                continue
            row = self.pivots.get(c)
            if row is None:
                return v
            for j, x in row.items():
                y = (v.get(j, 0) - f * x) % p
                if y:
                    if j not in v:
                        heapq.heappush(heap, j)
                    v[j] = y
                else:
                    v.pop(j, None)
        return v

    def add(self, v) -> bool:
        v = self.reduce(v)
        if not v:
            return False
        p = self.p
        if p == 2:
            self.pivots[(v & -v).bit_length() - 1] = v
            return True
        c = min(v)
        inv = pow(v[c], -1, p)
        self.pivots[c] = {j: x * inv % p for j, x in v.items()}
        return True


def rank_mod_p(A, p: int) -> int:
    rows, _ = _rows_of(A, p)
    ech = Echelon(p)
    for r in rows:
        ech.add(r)
    return ech.rank


def nullspace_mod_p(A, p: int) -> list[list[int]]:
    """Basis (as dense integer vectors in [0,p)) of {x : A x = 0 mod p}."""
    rows, n = _rows_of(A, p)
    # Gauss-Jordan on the rows
    piv_rows = {}
    order = []
    for r in rows:
        v = r
        if p == 2:
            for c in order:
                if (v >> c) & 1:
                    v ^= piv_rows[c]
            if not v:
                continue
            c = (v & -v).bit_length() - 1
            for c2 in order:
                if (piv_rows[c2] >> c) & 1:
                    piv_rows[c2] ^= v
            piv_rows[c] = v
            order.append(c)
        else:
            v = dict(v)
            for c in order:
                if c in v:
                    f = v[c]
                    for j, x in piv_rows[c].items():
                        y = (v.get(j, 0) - f * x) % p
                        if y:
                            v[j] = y
                        else:
                            v.pop(j, None)
            if not v:
                continue
            c = min(v)
            inv = pow(v[c], -1, p)
            v = {j: x * inv % p for j, x in v.items()}
            for c2 in order:
                row = piv_rows[c2]
                if c in row:
                    f = row[c]
                    for j, x in v.items():
                        y = (row.get(j, 0) - f * x) % p
                        if y:
                            row[j] = y
                        else:
                            row.pop(j, None)
            piv_rows[c] = v
            order.append(c)
    pivset = set(order)
    basis = []
    for free in range(n):
        if free in pivset:
            continue
        x = [0] * n
        x[free] = 1
        for c in order:
            row = piv_rows[c]
            if p == 2:
                if (row >> free) & 1:
                    x[c] = 1
            else:
                f = row.get(free, 0)
                if f:
                    x[c] = (-f) % p
        basis.append(x)
    return basis


def solve_mod_p(A, b: Sequence[int], p: int):
    """Some x with A x = b mod p, or None."""
    if isinstance(A, IntMatrix):
        data, n = A.data, A.cols
    else:
        data, n = A, (len(A[0]) if A else 0)
    aug = [list(r) + [bi] for r, bi in zip(data, b)]
    null = nullspace_mod_p(aug, p) if aug else [[0] * n + [1]]
    # a null vector with last coordinate nonzero gives a solution
    for v in null:
        if v[n] % p:
            inv = pow(-v[n], -1, p)
            return [x * inv % p for x in v[:n]]
    if not aug:
        return [0] * n
    return None


def kernel_dim_mod_p(A, p: int) -> int:
    _, n = _rows_of(A, p)
    return n - rank_mod_p(A, p)
