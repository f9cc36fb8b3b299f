"""Laurent polynomial matrices and a relation checker for braid-category
generator assignments, applied to the Burau representation extended by
iota (prepend a zero coordinate) and pi (drop the first coordinate).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional


class LaurentError(ArithmeticError):
    pass


class LaurentPoly:
    """Finite sum of c * t^e with e in Z; zero coefficients are never stored."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Optional[dict] = None):
        self.c = {e: v for e, v in (coeffs or {}).items() if v}

    @classmethod
    def const(cls, v) -> LaurentPoly:
        return cls({0: v})

    @classmethod
    def t(cls, e: int = 1) -> LaurentPoly:
        return cls({e: 1})

    def is_zero(self) -> bool:
        return not self.c

    def __add__(self, o):
        o = _lp(o)
        out = dict(self.c)
        for e, v in o.c.items():
            out[e] = out.get(e, 0) + v
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -v for e, v in self.c.items()})

    def __sub__(self, o):
        return self + (-_lp(o))

    def __rsub__(self, o):
        return _lp(o) - self

    def __mul__(self, o):
        o = _lp(o)
        out = {}
        for e1, v1 in self.c.items():
            for e2, v2 in o.c.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + v1 * v2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.unit_inverse() ** (-k)
        out = LaurentPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, o):
        if isinstance(o, (int, Fraction)):
            o = LaurentPoly.const(o)
        if not isinstance(o, LaurentPoly):
            return NotImplemented
        return self.c == o.c

    def __hash__(self):
        return hash(tuple(sorted(self.c.items())))

    def min_exp(self) -> int:
        return min(self.c) if self.c else 0

    def max_exp(self) -> int:
        return max(self.c) if self.c else 0

    def unit_inverse(self) -> LaurentPoly:
        """Inverse of a unit +-t^e."""
        if len(self.c) != 1:
            raise LaurentError(f"{self} is not a unit")
        (e, v), = self.c.items()
        if v not in (1, -1):
            raise LaurentError(f"{self} is not a unit over Z")
        return LaurentPoly({-e: v})

    def divexact(self, d: LaurentPoly) -> LaurentPoly:
        """self / d; raises LaurentError unless the division is exact."""
        if d.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return LaurentPoly()
        # shift both to ordinary polynomials, long-divide
        sa, sb = self.min_exp(), d.min_exp()
        a = {e - sa: v for e, v in self.c.items()}
        b = {e - sb: v for e, v in d.c.items()}
        db = max(b)
        lead = b[db]
        q = {}
        while a:
            da = max(a)
            if da < db:
                raise LaurentError(f"{self} is not divisible by {d}")
            coef = Fraction(a[da]) / lead
            if coef.denominator == 1:
                coef = int(coef)
            q[da - db] = coef
            for e, v in b.items():
                x = a.get(e + da - db, 0) - coef * v
                if x:
                    a[e + da - db] = x
                else:
                    a.pop(e + da - db, None)
        return LaurentPoly({e + sa - sb: v for e, v in q.items()})

    def evaluate(self, t0):
        t0 = Fraction(t0)
        return sum((Fraction(v) * t0 ** e for e, v in self.c.items()), Fraction(0))

    def to_sympy(self, t):
        return sum(v * t ** e for e, v in self.c.items())

    def __str__(self):
        if not self.c:
            return "0"
        terms = []
        for e in sorted(self.c):
            v = self.c[e]
            terms.append(f"{v}" if e == 0 else f"{v}*t^{e}")
        return " + ".join(terms).replace("+ -", "- ")

    def __repr__(self):
        return f"LaurentPoly({self})"


def _lp(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    return LaurentPoly.const(x)


T = LaurentPoly.t()
ONE = LaurentPoly.const(1)
ZERO = LaurentPoly()


class LaurentMatrix:
    __slots__ = ("rows", "cols", "e")

    def __init__(self, entries, rows: int | None = None, cols: int | None = None):
        e = [[_lp(x) for x in r] for r in entries]
        self.rows = len(e) if rows is None else rows
        self.cols = (len(e[0]) if e else 0) if cols is None else cols
        if len(e) != self.rows or any(len(r) != self.cols for r in e):
            raise ValueError("ragged Laurent matrix")
        self.e = e

    @classmethod
    def identity(cls, n: int) -> LaurentMatrix:
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def zero(cls, r: int, c: int) -> LaurentMatrix:
        return cls([[ZERO] * c for _ in range(r)], r, c)

    def __matmul__(self, o: LaurentMatrix) -> LaurentMatrix:
        if self.cols != o.rows:
            raise ValueError("shape mismatch")
        out = []
        for r in self.e:
            row = []
            for j in range(o.cols):
                acc = ZERO
                for k, a in enumerate(r):
                    if a.c and o.e[k][j].c:
                        acc = acc + a * o.e[k][j]
                row.append(acc)
            out.append(row)
        return LaurentMatrix(out, self.rows, o.cols)

    def __sub__(self, o: LaurentMatrix) -> LaurentMatrix:
        return LaurentMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.e, o.e)], self.rows, self.cols)

    def __eq__(self, o):
        if not isinstance(o, LaurentMatrix):
            return NotImplemented
        return self.rows == o.rows and self.cols == o.cols and self.e == o.e

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self.e for x in r)

    def power(self, k: int) -> LaurentMatrix:
        out = LaurentMatrix.identity(self.rows)
        for _ in range(k):
            out = out @ self
        return out

    def evaluate(self, t0) -> LaurentMatrix:
        return LaurentMatrix([[LaurentPoly.const(x.evaluate(t0)) for x in r] for r in self.e], self.rows, self.cols)

    def entries(self):
        return [x for r in self.e for x in r]

    def __str__(self):
        return "[" + "; ".join(", ".join(str(x) for x in r) for r in self.e) + "]"

    def __repr__(self):
        return f"LaurentMatrix({self})"


def direct_sum(*ms: LaurentMatrix) -> LaurentMatrix:
    R = sum(m.rows for m in ms)
    C = sum(m.cols for m in ms)
    out = LaurentMatrix.zero(R, C)
    r0 = c0 = 0
    for m in ms:
        for i in range(m.rows):
            for j in range(m.cols):
                out.e[r0 + i][c0 + j] = m.e[i][j]
        r0 += m.rows
        c0 += m.cols
    return out


def inverse_2x2(m: LaurentMatrix) -> LaurentMatrix:
    (a, b), (c, d) = m.e
    det = a * d - b * c
    inv = det.unit_inverse()
    return LaurentMatrix([[d * inv, -b * inv], [-c * inv, a * inv]])


# ---------------------------------------------------------------------------
# generator assignments

@dataclass
class GeneratorAssignment:
    max_n: int
    sigma: Callable[[int, int], LaurentMatrix]
    sigma_inv: Callable[[int, int], LaurentMatrix]
    iota: Callable[[int], LaurentMatrix]
    pi: Callable[[int], LaurentMatrix]
    label: str = ""


def _burau_block(ring_t: LaurentPoly) -> LaurentMatrix:
    return LaurentMatrix([[ONE - ring_t, ring_t], [ONE, ZERO]])


def burau_assignment(max_n: int) -> GeneratorAssignment:
    if max_n < 2:
        raise ValueError("max_n must be at least 2")
    block = _burau_block(T)
    block_inv = inverse_2x2(block)

    @lru_cache(maxsize=None)
    def sigma(i, n):
        return direct_sum(LaurentMatrix.identity(i - 1), block, LaurentMatrix.identity(n - i - 1))

    @lru_cache(maxsize=None)
    def sigma_inv(i, n):
        return direct_sum(LaurentMatrix.identity(i - 1), block_inv, LaurentMatrix.identity(n - i - 1))

    @lru_cache(maxsize=None)
    def iota(n):
        return LaurentMatrix([[ZERO] * n] + [[ONE if i == j else ZERO for j in range(n)] for i in range(n)],
                             n + 1, n)

    @lru_cache(maxsize=None)
    def pi(n_plus_1):
        n = n_plus_1 - 1
        return LaurentMatrix([[ONE if j == i + 1 else ZERO for j in range(n + 1)] for i in range(n)],
                             n, n + 1)

    return GeneratorAssignment(max_n, sigma, sigma_inv, iota, pi, label="burau")


def specialize(A: GeneratorAssignment, t0) -> GeneratorAssignment:
    t0 = Fraction(t0)
    if t0 == 0:
        raise ValueError("t cannot be specialized to 0 (t must stay invertible)")
    return GeneratorAssignment(
        A.max_n,
        lru_cache(maxsize=None)(lambda i, n: A.sigma(i, n).evaluate(t0)),
        lru_cache(maxsize=None)(lambda i, n: A.sigma_inv(i, n).evaluate(t0)),
        lru_cache(maxsize=None)(lambda n: A.iota(n).evaluate(t0)),
        lru_cache(maxsize=None)(lambda n: A.pi(n).evaluate(t0)),
        label=f"{A.label}@t={t0}")


def closed_form_edge_value(k: int, n: int) -> LaurentMatrix:
    """(((-t)^k + t) / (t + 1)) + I_{n-1}, dividing exactly."""
    num = (-T) ** k + T
    val = num.divexact(T + ONE)
    return direct_sum(LaurentMatrix([[val]]), LaurentMatrix.identity(n - 1))


@dataclass
class EdgeEffect:
    k: int
    n: int
    computed: LaurentMatrix
    closed_form: Optional[LaurentMatrix]
    expected: LaurentMatrix  # right-hand side of the relation

    @property
    def matches_closed_form(self) -> bool:
        return self.closed_form is not None and self.computed == self.closed_form

    @property
    def relation_holds(self) -> bool:
        return self.computed == self.expected


def edge_rhs(A: GeneratorAssignment, k: int, n: int) -> LaurentMatrix:
    if k % 2 == 0:
        return LaurentMatrix.identity(n)
    return A.iota(n - 1) @ A.pi(n)


def edge_effect_value(A: GeneratorAssignment, k: int, n: int, closed_form: bool = True) -> EdgeEffect:
    """pi_{n+1} sigma_{1,n+1}^k iota_n, next to the closed form."""
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    val = A.pi(n + 1) @ A.sigma(1, n + 1).power(k) @ A.iota(n)
    cf = closed_form_edge_value(k, n) if closed_form else None
    return EdgeEffect(k, n, val, cf, edge_rhs(A, k, n))


# ---------------------------------------------------------------------------
# relation report

@dataclass
class RelationInstance:
    rel: str
    params: str
    holds: bool
    residual: Optional[LaurentMatrix] = None
    vanishing: Optional[list] = None

    def row(self) -> str:
        status = "HOLDS" if self.holds else "FAILS"
        out = f"{self.rel:<4} {self.params:<22} {status}"
        if not self.holds:
            out += f"  residual={self.residual}"
            if self.vanishing is not None:
                out += f"  vanishes at t in {{{', '.join(self.vanishing)}}}"
        return out


@dataclass
class RelationReport:
    label: str
    instances: list = field(default_factory=list)

    @property
    def all_hold(self) -> bool:
        return all(r.holds for r in self.instances)

    def failures(self, rel: Optional[str] = None) -> list:
        return [r for r in self.instances if not r.holds and (rel is None or r.rel == rel)]

    def by_relation(self) -> dict:
        out = {}
        for r in self.instances:
            h, f = out.get(r.rel, (0, 0))
            out[r.rel] = (h + r.holds, f + (not r.holds))
        return out

    def lines(self) -> list[str]:
        return [r.row() for r in self.instances]


@lru_cache(maxsize=None)
def _vanishing_locus(key: tuple) -> tuple:
    """Common complex zeros (t != 0) of a family of Laurent polynomials."""
    import sympy
    t = sympy.Symbol("t")
    g = None
    for terms in key:
        lp = LaurentPoly(dict(terms))
        shift = -lp.min_exp()
        p = sympy.Poly(sympy.expand(lp.to_sympy(t) * t ** shift), t)
        g = p if g is None else sympy.gcd(g, p)
    if g is None or g.is_zero:
        return ("all",)
    roots = sympy.roots(g, t)
    out = sorted((str(r) for r in roots if r != 0), key=str)
    if sum(m for r, m in roots.items()) < g.degree():
        out.append("(+ roots without closed form)")
    return tuple(out)


def vanishing_locus(residual: LaurentMatrix) -> list[str]:
    key = tuple(tuple(sorted(x.c.items())) for x in residual.entries() if not x.is_zero())
    return list(_vanishing_locus(key))


def check_relations(A: GeneratorAssignment, K: int = 8, locus: bool = True) -> RelationReport:
    rep = RelationReport(A.label)

    def add(rel, params, lhs, rhs):
        res = lhs - rhs
        ok = res.is_zero()
        van = None
        if not ok and locus:
            van = vanishing_locus(res)
        rep.instances.append(RelationInstance(rel, params, ok, None if ok else res, van))

    N = A.max_n
    for n in range(2, N + 1):
        for i in range(1, n):
            I = LaurentMatrix.identity(n)
            add("i", f"i={i} n={n}", A.sigma(i, n) @ A.sigma_inv(i, n), I)
            add("i", f"i={i} n={n} (left)", A.sigma_inv(i, n) @ A.sigma(i, n), I)
    for n in range(3, N + 1):
        for i in range(1, n - 1):
            s, s1 = A.sigma(i, n), A.sigma(i + 1, n)
            add("b", f"i={i} n={n}", s @ s1 @ s, s1 @ s @ s1)
        for i in range(1, n):
            for j in range(i + 2, n):
                add("b", f"i={i} j={j} n={n}", A.sigma(i, n) @ A.sigma(j, n), A.sigma(j, n) @ A.sigma(i, n))
    for n in range(2, N):
        for i in range(1, n):
            for eps, f in ((1, A.sigma), (-1, A.sigma_inv)):
                add("c", f"iota i={i} n={n} e={eps:+d}", f(i + 1, n + 1) @ A.iota(n), A.iota(n) @ f(i, n))
                add("c", f"pi i={i} n={n} e={eps:+d}", f(i, n) @ A.pi(n + 1), A.pi(n + 1) @ f(i + 1, n + 1))
    for n in range(1, N):
        for k in range(K + 1):
            ee = edge_effect_value(A, k, n, closed_form=False)
            add("e", f"k={k} n={n}", ee.computed, ee.expected)
    return rep
