"""Dense integer matrices with arbitrary-precision entries.

Entries are plain Python ints, so nothing ever overflows.  Matrices are
treated as immutable values: every operation returns a new matrix.
"""

from __future__ import annotations

from typing import Iterable, Sequence


class IntMatrix:
    __slots__ = ("rows", "cols", "data", "_hash")

    def __init__(self, data: Iterable[Sequence[int]], rows: int | None = None, cols: int | None = None):
        data = [list(map(int, r)) for r in data]
        if rows is None:
            rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError(f"ragged or mis-sized matrix data for shape {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        self.data = data
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls([[0] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def diagonal(cls, entries: Sequence[int], rows: int | None = None, cols: int | None = None) -> IntMatrix:
        rows = len(entries) if rows is None else rows
        cols = len(entries) if cols is None else cols
        m = cls.zeros(rows, cols)
        for i, e in enumerate(entries):
            m.data[i][i] = e
        return m

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> IntMatrix:
        return cls([[c[i] for c in columns] for i in range(rows)], rows, len(columns))

    @classmethod
    def from_flat(cls, rows: int, cols: int, entries: Sequence[int]) -> IntMatrix:
        if len(entries) != rows * cols:
            raise ValueError("entries.length must equal rows*cols")
        return cls([list(entries[i * cols:(i + 1) * cols]) for i in range(rows)], rows, cols)

    # -- basic access ---------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i: int) -> list[int]:
        return list(self.data[i])

    def column(self, j: int) -> list[int]:
        return [r[j] for r in self.data]

    def columns(self) -> list[list[int]]:
        return [[r[j] for r in self.data] for j in range(self.cols)]

    def flat(self) -> list[int]:
        return [x for r in self.data for x in r]

    def copy_data(self) -> list[list[int]]:
        return [list(r) for r in self.data]

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.data)

    def is_identity(self) -> bool:
        return self.rows == self.cols and all(
            self.data[i][j] == (i == j) for i in range(self.rows) for j in range(self.cols))

    def max_abs(self) -> int:
        return max((abs(x) for r in self.data for x in r), default=0)

    # -- arithmetic -----------------------------------------------------
    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        ocols = other.columns()
        out = []
        for r in self.data:
            nz = [(k, a) for k, a in enumerate(r) if a]
            out.append([sum(a * c[k] for k, a in nz) for c in ocols])
        return IntMatrix(out, self.rows, other.cols)

    def apply(self, v: Sequence[int]) -> list[int]:
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        nz = [(k, x) for k, x in enumerate(v) if x]
        return [sum(r[k] * x for k, x in nz) for r in self.data]

    def __add__(self, other: IntMatrix) -> IntMatrix:
        self._check_same(other)
        return IntMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)],
                         self.rows, self.cols)

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        self._check_same(other)
        return IntMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)],
                         self.rows, self.cols)

    def __neg__(self) -> IntMatrix:
        return IntMatrix([[-a for a in r] for r in self.data], self.rows, self.cols)

    def scale(self, c: int) -> IntMatrix:
        return IntMatrix([[c * a for a in r] for r in self.data], self.rows, self.cols)

    def _check_same(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    @property
    def T(self) -> IntMatrix:
        return IntMatrix([list(c) for c in zip(*self.data)] if self.rows else [[] for _ in range(self.cols)],
                         self.cols, self.rows)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> IntMatrix:
        return IntMatrix([[self.data[i][j] for j in cols] for i in rows], len(rows), len(cols))

    def hstack(self, *others: IntMatrix) -> IntMatrix:
        return hstack(self, *others)

    def vstack(self, *others: IntMatrix) -> IntMatrix:
        return vstack(self, *others)

    def mod(self, p: int) -> IntMatrix:
        return IntMatrix([[a % p for a in r] for r in self.data], self.rows, self.cols)

    # -- value semantics ------------------------------------------------
    def _key(self):
        return (self.rows, self.cols, tuple(tuple(r) for r in self.data))

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.rows == other.rows and self.cols == other.cols and self.data == other.data

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self) -> str:
        if self.rows * self.cols <= 64:
            return f"IntMatrix({self.data!r})"
        return f"IntMatrix(<{self.rows}x{self.cols}>)"


def hstack(*mats: IntMatrix) -> IntMatrix:
    rows = mats[0].rows
    if any(m.rows != rows for m in mats):
        raise ValueError("hstack needs equal row counts")
    return IntMatrix([[x for m in mats for x in m.data[i]] for i in range(rows)],
                     rows, sum(m.cols for m in mats))


def vstack(*mats: IntMatrix) -> IntMatrix:
    cols = mats[0].cols
    if any(m.cols != cols for m in mats):
        raise ValueError("vstack needs equal column counts")
    return IntMatrix([list(r) for m in mats for r in m.data], sum(m.rows for m in mats), cols)


def block_diagonal(*mats: IntMatrix) -> IntMatrix:
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    out = IntMatrix.zeros(rows, cols)
    r0 = c0 = 0
    for m in mats:
        for i in range(m.rows):
            out.data[r0 + i][c0:c0 + m.cols] = m.data[i]
        r0 += m.rows
        c0 += m.cols
    return out


def kron(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    out = []
    for ra in a.data:
        for rb in b.data:
            out.append([x * y for x in ra for y in rb])
    return IntMatrix(out, a.rows * b.rows, a.cols * b.cols)


def determinant(a: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = a.rows
    if n != a.cols:
        raise ValueError("determinant of non-square matrix")
    if n == 0:
        return 1
    m = a.copy_data()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]
