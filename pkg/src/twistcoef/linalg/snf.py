"""Smith normal form over the integers, with unimodular transforms.

``smith_normal_form(A)`` returns ``SmithForm(d, U, V, U_inv)`` with
``U @ A @ V`` diagonal with diagonal ``d`` and ``d[i] | d[i+1]``.

Small matrices go through a straightforward dense elimination.  Above a size
threshold the matrix is first reduced by sparse elimination on unit pivots
(choosing pivots with a Markowitz-style fill-in estimate), and only the
leftover core is handed to the dense routine.  Boundary matrices of group
resolutions are sparse with mostly +-1 entries, so the core is usually tiny.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from math import gcd
from typing import Optional

from .matrix import IntMatrix

SPARSE_THRESHOLD = 64


class Cancelled(RuntimeError):
    """Raised when a long elimination notices its cancel token was set."""


def _check(cancel):
    if cancel is not None and cancel.is_set():
        raise Cancelled("elimination cancelled")


@dataclass(frozen=True)
class SmithForm:
    d: list  # length min(rows, cols); zeros after the rank
    U: Optional[IntMatrix]
    V: Optional[IntMatrix]
    U_inv: Optional[IntMatrix] = None

    @property
    def rank(self) -> int:
        return sum(1 for x in self.d if x)

    def nontrivial(self) -> list[int]:
        return [x for x in self.d if x not in (0, 1)]


def smith_normal_form(A: IntMatrix, *, transforms: bool = True, threshold: int = SPARSE_THRESHOLD,
                      cancel=None) -> SmithForm:
    m, n = A.rows, A.cols
    if m > threshold or n > threshold:
        return _sparse_snf(A, transforms, cancel)
    d, U, Uinv, V = _dense_snf(A.copy_data(), m, n, transforms, cancel)
    if not transforms:
        return SmithForm(d, None, None, None)
    return SmithForm(d, IntMatrix(U, m, m), IntMatrix(V, n, n), IntMatrix(Uinv, m, m))


def elementary_divisors(A: IntMatrix, cancel=None) -> list[int]:
    """Diagonal of the Smith form, without computing transforms."""
    return smith_normal_form(A, transforms=False, cancel=cancel).d


# ---------------------------------------------------------------------------
# dense algorithm

def _ident(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _dense_snf(A, m, n, transforms, cancel=None):
    U = _ident(m) if transforms else None
    Uinv = _ident(m) if transforms else None
    V = _ident(n) if transforms else None

    def row_addmul(i, t, q):
        # row_i += q * row_t
        if not q:
            return
        Ai, At = A[i], A[t]
        for j in range(n):
            if At[j]:
                Ai[j] += q * At[j]
        if transforms:
            Ui, Ut = U[i], U[t]
            for j in range(m):
                if Ut[j]:
                    Ui[j] += q * Ut[j]
            # inverse picks up column_t -= q * column_i
            for r in Uinv:
                if r[i]:
                    r[t] -= q * r[i]

    def col_addmul(j, t, q):
        # col_j += q * col_t
        if not q:
            return
        for r in A:
            if r[t]:
                r[j] += q * r[t]
        if transforms:
            for r in V:
                if r[t]:
                    r[j] += q * r[t]

    def row_swap(i, t):
        if i == t:
            return
        A[i], A[t] = A[t], A[i]
        if transforms:
            U[i], U[t] = U[t], U[i]
            for r in Uinv:
                r[i], r[t] = r[t], r[i]

    def col_swap(j, t):
        if j == t:
            return
        for r in A:
            r[j], r[t] = r[t], r[j]
        if transforms:
            for r in V:
                r[j], r[t] = r[t], r[j]

    k = min(m, n)
    t = 0
    while t < k:
        _check(cancel)
        best = None
        for i in range(t, m):
            Ai = A[i]
            for j in range(t, n):
                x = Ai[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        row_swap(t, best[1])
        col_swap(t, best[2])
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    row_addmul(i, t, -(A[i][t] // p))
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    col_addmul(j, t, -(A[t][j] // p))
                    if A[t][j]:
                        dirty = True
            if dirty:
                # bring the smallest remainder into the pivot position
                best = None
                for i in range(t + 1, m):
                    if A[i][t] and (best is None or abs(A[i][t]) < best[0]):
                        best = (abs(A[i][t]), i, 'r')
                for j in range(t + 1, n):
                    if A[t][j] and (best is None or abs(A[t][j]) < best[0]):
                        best = (abs(A[t][j]), j, 'c')
                if best[2] == 'r':
                    row_swap(t, best[1])
                else:
                    col_swap(t, best[1])
                continue
            bad = None
            for i in range(t + 1, m):
                Ai = A[i]
                for j in range(t + 1, n):
                    if Ai[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_addmul(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            if transforms:
                U[t] = [-x for x in U[t]]
                for r in Uinv:
                    r[t] = -r[t]
        t += 1
    d = [A[i][i] for i in range(k)]
    return d, U, Uinv, V


# ---------------------------------------------------------------------------
# sparse algorithm

def _axpy(dst: dict, src: dict, q: int):
    for j, x in src.items():
        v = dst.get(j, 0) + q * x
        if v:
            dst[j] = v
        else:
            dst.pop(j, None)


def _sparse_snf(A: IntMatrix, transforms: bool, cancel=None) -> SmithForm:
    m, n = A.rows, A.cols
    R = []
    colrows = [set() for _ in range(n)]
    for i, row in enumerate(A.data):
        d = {j: x for j, x in enumerate(row) if x}
        R.append(d)
        for j in d:
            colrows[j].add(i)
    return _sparse_snf_rows(R, colrows, m, n, transforms, cancel)


def _sparse_snf_rows(R, colrows, m, n, transforms, cancel=None) -> SmithForm:
    if transforms:
        Urows = [{i: 1} for i in range(m)]
        Uinvcols = [{i: 1} for i in range(m)]
        Vcols = [{j: 1} for j in range(n)]
    active_row = [True] * m
    pivots = []  # (row, col, sign)
    heap = [(len(R[i]), i) for i in range(m) if R[i]]
    heapq.heapify(heap)
    steps = 0
    while heap:
        ln, p = heapq.heappop(heap)
        if not active_row[p] or ln != len(R[p]) or not R[p]:
            continue
        steps += 1
        if steps % 256 == 0:
            _check(cancel)
        # unit entry in this row with the shortest column
        best = None
        for j, x in R[p].items():
            if x == 1 or x == -1:
                c = len(colrows[j])
                if best is None or c < best[0]:
                    best = (c, j)
                    if c == 1:
                        break
        if best is None:
            continue  # left for the dense core; re-pushed if it changes
        c = best[1]
        a = R[p][c]
        Rp = R[p]
        for i in list(colrows[c]):
            if i == p:
                continue
            f = R[i][c] * a
            Ri = R[i]
            for j, x in Rp.items():
                v = Ri.get(j, 0) - f * x
                if v:
                    if j not in Ri:
                        colrows[j].add(i)
                    Ri[j] = v
                elif j in Ri:
                    del Ri[j]
                    colrows[j].discard(i)
            if transforms:
                _axpy(Urows[i], Urows[p], -f)
                _axpy(Uinvcols[p], Uinvcols[i], f)
            heapq.heappush(heap, (len(Ri), i))
        if transforms:
            for j, x in Rp.items():
                if j != c:
                    _axpy(Vcols[j], Vcols[c], -x * a)
        for j in Rp:
            colrows[j].discard(p)
        R[p] = {}
        active_row[p] = False
        pivots.append((p, c, a))

    pivot_cols = {c for _, c, _ in pivots}
    core_rows = [i for i in range(m) if active_row[i] and R[i]]
    core_cols = sorted({j for i in core_rows for j in R[i]})
    col_pos = {j: k for k, j in enumerate(core_cols)}
    B = [[0] * len(core_cols) for _ in core_rows]
    for a_, i in enumerate(core_rows):
        for j, x in R[i].items():
            B[a_][col_pos[j]] = x
    dc, Uc, Ucinv, Vc = _dense_snf(B, len(core_rows), len(core_cols), transforms, cancel)

    r = len(pivots)
    k = min(m, n)
    d = [1] * r + dc + [0] * (k - r - len(dc))
    d = d[:k]
    if not transforms:
        return SmithForm(d, None, None, None)

    core_set = set(core_rows)
    rest_rows = [i for i in range(m) if active_row[i] and i not in core_set]
    core_col_set = set(core_cols)
    rest_cols = [j for j in range(n) if j not in pivot_cols and j not in core_col_set]

    def comb(vectors, idx, coeffs):
        out = {}
        for kk, q in enumerate(coeffs):
            if q:
                _axpy(out, vectors[idx[kk]], q)
        return out

    U_rows_final = [dict((j, a * x) for j, x in Urows[p].items()) for p, _, a in pivots]
    U_rows_final += [comb(Urows, core_rows, Uc[s]) for s in range(len(core_rows))]
    U_rows_final += [dict(Urows[i]) for i in rest_rows]

    Uinv_cols_final = [dict((j, a * x) for j, x in Uinvcols[p].items()) for p, _, a in pivots]
    Uinv_cols_final += [comb(Uinvcols, core_rows, [Ucinv[kk][s] for kk in range(len(core_rows))])
                        for s in range(len(core_rows))]
    Uinv_cols_final += [dict(Uinvcols[i]) for i in rest_rows]

    V_cols_final = [dict(Vcols[c]) for _, c, _ in pivots]
    V_cols_final += [comb(Vcols, core_cols, [Vc[kk][s] for kk in range(len(core_cols))])
                     for s in range(len(core_cols))]
    V_cols_final += [dict(Vcols[j]) for j in rest_cols]

    U = IntMatrix.zeros(m, m)
    for i, row in enumerate(U_rows_final):
        for j, x in row.items():
            U.data[i][j] = x
    Uinv = IntMatrix.zeros(m, m)
    for j, col in enumerate(Uinv_cols_final):
        for i, x in col.items():
            Uinv.data[i][j] = x
    V = IntMatrix.zeros(n, n)
    for j, col in enumerate(V_cols_final):
        for i, x in col.items():
            V.data[i][j] = x
    return SmithForm(d, U, V, Uinv)


# ---------------------------------------------------------------------------
# consequences

def integer_kernel(A: IntMatrix, cancel=None) -> IntMatrix:
    """Columns form a Z-basis of {x : A x = 0}."""
    sf = smith_normal_form(A, cancel=cancel)
    r = sf.rank
    cols = [sf.V.column(j) for j in range(r, A.cols)]
    return IntMatrix.from_columns(cols, A.cols)


def solve_integer(A: IntMatrix, b, sf: SmithForm | None = None):
    """Some integer x with A x = b, or None if there is none."""
    if sf is None:
        sf = smith_normal_form(A)
    ub = sf.U.apply(list(b))
    y = [0] * A.cols
    for i, ui in enumerate(ub):
        di = sf.d[i] if i < len(sf.d) else 0
        if di:
            if ui % di:
                return None
            y[i] = ui // di
        elif ui:
            return None
    return sf.V.apply(y)


def hermite_rank(A: IntMatrix) -> int:
    return smith_normal_form(A, transforms=False).rank


def xgcd(a: int, b: int):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def lcm(a: int, b: int) -> int:
    return abs(a * b) // gcd(a, b) if a and b else 0


def sparse_elementary_divisors(rows: list, ncols: int, cancel=None) -> list[int]:
    """Nonzero elementary divisors of a matrix given as a list of {col: value} rows."""
    R = [dict(r) for r in rows]
    colrows = [set() for _ in range(ncols)]
    for i, r in enumerate(R):
        for j in r:
            colrows[j].add(i)
    sf = _sparse_snf_rows(R, colrows, len(R), ncols, False, cancel)
    return [x for x in sf.d if x]
