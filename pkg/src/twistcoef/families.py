"""Example coefficient systems.

* ``constant_functor(A, N)``: every morphism goes to the identity of A.
* ``kunneth_functor(Z, q, ring, N)``: n -> H_q(Z^n), from the graded ranks
  of the label space Z via the Kunneth formula.
* ``partition_functor(lam, ring, N)``: the free module on ordered
  decompositions of {1..n} of type lam.
* ``interval_partition_functor(lam, mu, ring, N)``: the same for all types
  in an interval of the preorder on ordered partitions.
* ``sign_extension_attempt(N)``: tries to extend the sign action of the
  symmetric groups to partial injections, and reports why it cannot work.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations, product
from math import factorial
from typing import Optional

from .functor import FunctorialityReport, TruncatedFunctor
from .linalg import AbMap, FgAbGroup, IntMatrix, parse_ring
from . import sigma as sg
from .sigma import PartialInjection


class FamilyError(ValueError):
    pass


def _scalar_group(ring: str, rank: int) -> FgAbGroup:
    kind, p = parse_ring(ring)
    return FgAbGroup.from_invariants([p if kind == "Fp" else 0] * rank)


def _ring_tag(ring):
    kind, p = parse_ring(ring)
    return f"Fp:{p}" if kind == "Fp" else kind


# ---------------------------------------------------------------------------
# constant

def constant_functor(A: FgAbGroup, N: int, ring: str = "Z") -> TruncatedFunctor:
    A = A.simplify()[0]
    groups = [A] * (N + 1)
    ident = IntMatrix.identity(A.ngens)
    return TruncatedFunctor(N, groups, evaluator=lambda f: ident, ring=ring, name=f"const({A.describe()})")


# ---------------------------------------------------------------------------
# Kunneth

@dataclass(frozen=True)
class GradedBasis:
    """Graded ranks b_0, b_1, ..., b_top of the homology of a connected space.

    ``torsion`` lists (degree, order) pairs of torsion summands; they are not
    modelled, only used to reject integral coefficients.
    """
    ranks: tuple
    torsion: tuple = ()

    def __post_init__(self):
        r = tuple(int(x) for x in self.ranks)
        object.__setattr__(self, "ranks", r)
        if not r or r[0] != 1:
            raise FamilyError("b_0 must be 1 (connected space with a unit class)")
        if any(x < 0 for x in r):
            raise FamilyError("ranks must be nonnegative")

    @property
    def top(self) -> int:
        return len(self.ranks) - 1

    @property
    def hconn(self) -> int:
        """Largest k >= 0 with b_1 = ... = b_k = 0."""
        k = 0
        while k + 1 <= self.top and self.ranks[k + 1] == 0:
            k += 1
        if k == self.top:
            return 10 ** 9  # homologically trivial above degree 0
        return k

    def classes(self) -> list[tuple[int, int]]:
        """(degree, index) for every basis class; (0, 0) is the unit."""
        return [(d, i) for d, b in enumerate(self.ranks) for i in range(b)]


CIRCLE = GradedBasis((1, 1))


def named_space(name: str) -> GradedBasis:
    table = {
        "point": GradedBasis((1,)),
        "circle": CIRCLE,
        "S1": CIRCLE,
        "S2": GradedBasis((1, 0, 1)),
        "torus": GradedBasis((1, 2, 1)),
        "S1vS1": GradedBasis((1, 2)),
        "RP2": GradedBasis((1,), torsion=((1, 2),)),
    }
    if name in table:
        return table[name]
    if name.startswith("[") and name.endswith("]"):
        return GradedBasis(tuple(int(x) for x in name[1:-1].split(";") if x.strip()))
    raise FamilyError(f"unknown space {name!r}")


def kunneth_words(Z: GradedBasis, q: int, n: int) -> list[tuple]:
    classes = Z.classes()
    out = []

    def rec(prefix, remaining, slots):
        if slots == 0:
            if remaining == 0:
                out.append(tuple(prefix))
            return
        for c in classes:
            if c[0] <= remaining:
                prefix.append(c)
                rec(prefix, remaining - c[0], slots - 1)
                prefix.pop()

    rec([], q, n)
    return out


def kunneth_rank_oracle(Z: GradedBasis, q: int, n: int) -> int:
    """Coefficient of x^q in (sum_i b_i x^i)^n."""
    poly = [1]
    for _ in range(n):
        new = [0] * (len(poly) + Z.top)
        for a, x in enumerate(poly):
            for b, y in enumerate(Z.ranks):
                new[a + b] += x * y
        poly = new
    return poly[q] if q < len(poly) else 0


def kunneth_functor(Z: GradedBasis, q: int, ring: str, N: int, koszul: bool = True) -> TruncatedFunctor:
    kind, _ = parse_ring(ring)
    if kind == "Z" and Z.torsion:
        raise FamilyError("integral Kunneth functor needs torsion-free label homology")
    words = [kunneth_words(Z, q, n) for n in range(N + 1)]
    index = [{w: i for i, w in enumerate(ws)} for ws in words]
    unit = (0, 0)

    def ev(f: PartialInjection) -> IntMatrix:
        M = IntMatrix.zeros(len(words[f.n]), len(words[f.m]))
        for col, w in enumerate(words[f.m]):
            new = [unit] * f.n
            dead = False
            placed = []  # (target position, degree) in source order
            for i, c in enumerate(w):
                j = f.images[i]
                if j is None:
                    if c[0] > 0:
                        dead = True
                        break
                    continue
                new[j - 1] = c
                if c[0] % 2:
                    placed.append(j)
            if dead:
                continue
            sign = 1
            if koszul:
                inv = sum(1 for a, b in combinations(placed, 2) if a > b)
                sign = -1 if inv % 2 else 1
            M.data[index[f.n][tuple(new)]][col] = sign
        return M

    groups = [_scalar_group(ring, len(ws)) for ws in words]
    return TruncatedFunctor(N, groups, evaluator=ev, ring=ring,
                            name=f"kunneth({list(Z.ranks)},q={q},{_ring_tag(ring)})")


# ---------------------------------------------------------------------------
# ordered decompositions

@dataclass(frozen=True)
class PartitionType:
    parts: tuple

    def __post_init__(self):
        p = tuple(int(x) for x in self.parts)
        object.__setattr__(self, "parts", p)
        if not p or any(x < 1 for x in p):
            raise FamilyError("parts must be positive and there must be at least one")

    @property
    def size(self) -> int:
        return sum(self.parts)

    def at(self, n: int) -> tuple:
        """lam[n] = (n - |lam|, lam_1, ..., lam_k), or lam itself when n = |lam|."""
        if n < self.size:
            raise FamilyError(f"lam[{n}] undefined for |lam| = {self.size}")
        return self.parts if n == self.size else (n - self.size,) + self.parts

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"


def _as_type(lam) -> PartitionType:
    return lam if isinstance(lam, PartitionType) else PartitionType(tuple(lam))


def leq(lam, mu) -> bool:
    """lam <= mu iff some injection alpha has lam_i <= mu_alpha(i)."""
    lam, mu = tuple(lam), tuple(mu)
    if len(lam) > len(mu):
        return False
    # bipartite matching; sizes here are tiny
    for alpha in permutations(range(len(mu)), len(lam)):
        if all(lam[i] <= mu[alpha[i]] for i in range(len(lam))):
            return True
    return False


def interval_types(lam, mu) -> list[tuple]:
    lam, mu = tuple(lam), tuple(mu)
    top = max(mu)
    out = []
    for k in range(len(lam), len(mu) + 1):
        for nu in product(range(1, top + 1), repeat=k):
            if sum(nu) <= sum(mu) and leq(lam, nu) and leq(nu, mu):
                out.append(nu)
    return out


def ordered_decompositions(n: int, nu: tuple) -> list[tuple]:
    out = []

    def rec(prefix, used, i):
        if i == len(nu):
            out.append(tuple(prefix))
            return
        avail = [x for x in range(1, n + 1) if x not in used]
        for S in combinations(avail, nu[i]):
            prefix.append(frozenset(S))
            rec(prefix, used | set(S), i + 1)
            prefix.pop()

    if sum(nu) <= n:
        rec([], set(), 0)
    return out


def _decomposition_functor(bases: list[list[tuple]], N: int, ring: str, name: str,
                           keep_type, min_size: int) -> TruncatedFunctor:
    index = [{d: i for i, d in enumerate(B)} for B in bases]

    def ev(f: PartialInjection) -> IntMatrix:
        M = IntMatrix.zeros(len(bases[f.n]), len(bases[f.m]))
        if f.m < min_size or f.n < min_size:
            return M
        for col, dec in enumerate(bases[f.m]):
            img = tuple(frozenset(f.images[s - 1] for s in S if f.images[s - 1] is not None) for S in dec)
            if not keep_type(dec, img):
                continue
            row = index[f.n].get(img)
            if row is not None:
                M.data[row][col] = 1
        return M

    groups = [_scalar_group(ring, len(B)) for B in bases]
    return TruncatedFunctor(N, groups, evaluator=ev, ring=ring, name=name)


def partition_functor(lam, ring: str, N: int) -> TruncatedFunctor:
    lam = _as_type(lam)
    bases = [ordered_decompositions(n, lam.parts) if n >= lam.size else [] for n in range(N + 1)]
    # defined only when the whole decomposition survives
    keep = lambda dec, img: all(len(a) == len(b) for a, b in zip(dec, img))
    return _decomposition_functor(bases, N, ring, f"P{lam}", keep, lam.size)


def interval_partition_functor(lam, mu, ring: str, N: int) -> TruncatedFunctor:
    lam, mu = _as_type(lam), _as_type(mu)
    if not leq(lam.parts, mu.parts):
        raise FamilyError(f"{lam} is not <= {mu}")
    types = interval_types(lam.parts, mu.parts)
    tset = set(types)
    bases = []
    for n in range(N + 1):
        B = []
        if n >= lam.size:
            for nu in types:
                B.extend(ordered_decompositions(n, nu))
        bases.append(B)
    keep = lambda dec, img: tuple(len(b) for b in img) in tset
    return _decomposition_functor(bases, N, ring, f"P[{lam},{mu}]", keep, lam.size)


def partition_orbit_check(T: TruncatedFunctor, lam, n: int) -> bool:
    """The permutation images act transitively on the basis, with orbit size
    |Sigma_n / Sigma_{lam[n]}|."""
    lam = _as_type(lam)
    if n < lam.size:
        return T.groups[n].ngens == 0
    size = factorial(n)
    for part in lam.at(n):
        size //= factorial(part)
    if T.groups[n].ngens != size:
        return False
    if size == 0:
        return True
    seen = {0}
    frontier = [0]
    gens = [T.map(sg.transposition(i, n)).matrix for i in range(1, n)]
    while frontier:
        b = frontier.pop()
        for g in gens:
            col = g.column(b)
            nz = [r for r, x in enumerate(col) if x]
            if len(nz) != 1 or col[nz[0]] != 1:
                return False
            if nz[0] not in seen:
                seen.add(nz[0])
                frontier.append(nz[0])
    return len(seen) == size


# ---------------------------------------------------------------------------
# alternating coefficients

@dataclass
class SignAttemptReport:
    functor: TruncatedFunctor
    functoriality: FunctorialityReport
    composite: str
    composite_lhs: IntMatrix
    composite_rhs: IntMatrix
    permutations_only_ok: bool
    iota_naturality_ok: bool
    notes: list = field(default_factory=list)

    @property
    def failed_as_expected(self) -> bool:
        return (not self.functoriality.ok) and self.composite_lhs != self.composite_rhs


def sign_extension_functor(N: int) -> TruncatedFunctor:
    """T_n = Z[Z/2]; transpositions act by the nontrivial element, iota and pi by the identity."""
    G = FgAbGroup.free(2)
    groups = [G] * (N + 1)
    swap = IntMatrix([[0, 1], [1, 0]])
    ident = IntMatrix.identity(2)
    gens = {}
    for a in sg.all_atoms(N):
        gens[a] = AbMap(G, G, swap if a.kind == "sigma" else ident, check=False)
    return TruncatedFunctor(N, groups, gens, name="sign-attempt")


def sign_extension_attempt(N: int = 3, bound: Optional[int] = None) -> SignAttemptReport:
    N = max(N, 2)
    T = sign_extension_functor(N)
    rep = T.check_functoriality(bound=bound)
    # pi_2 o sigma_1 o iota_1 and iota_0 o pi_1 are both the empty map 1 -> 1
    g = sg.compose_all([sg.iota(1), sg.transposition(1, 2), sg.pi(2)])
    h = sg.compose(sg.iota(0), sg.pi(1))
    assert g == h
    lhs = (T.gen(sg.PI(2)) @ T.gen(sg.SIGMA(1, 2)) @ T.gen(sg.IOTA(1))).matrix
    rhs = (T.gen(sg.IOTA(0)) @ T.gen(sg.PI(1))).matrix
    perms_ok = True
    for n in range(2, N + 1):
        for p in permutations(range(1, n + 1)):
            for q in permutations(range(1, n + 1)):
                P, Q = sg.permutation(p), sg.permutation(q)
                if not T.map(sg.compose(P, Q)).equals(T.map(P) @ T.map(Q)):
                    perms_ok = False
    nat_ok = True
    for n in range(0, N):
        for p in permutations(range(1, n + 1)):
            P = sg.permutation(p)
            left = T.gen(sg.IOTA(n)) @ T.map(P)
            right = T.map(sg.stabilize_morphism(P)) @ T.gen(sg.IOTA(n))
            if not left.equals(right):
                nat_ok = False
    composite = f"pi(2) o sigma(1,2) o iota(1) = {g} = iota(0) o pi(1)"
    return SignAttemptReport(T, rep, composite, lhs, rhs, perms_ok, nat_ok)


# ---------------------------------------------------------------------------
# spec strings

SPEC_FORMS = (
    "const:<A>            A = Z, Q, Fp:<p> or Z/<m>",
    "kunneth:<space>,q=<q>[,<ring>]   space = point, circle, S2, torus, S1vS1, [b0;b1;...]",
    "partition:<l1>,<l2>,...[,<ring>]",
    "interval:<lam>/<mu>[,<ring>]     e.g. interval:1/2 or interval:1/1,1",
    "sign-attempt",
)


def _split_ring(parts: list[str], default: str) -> tuple[list[str], str]:
    if parts and not parts[-1].strip().lstrip("-").isdigit() and "=" not in parts[-1]:
        try:
            parse_ring(parts[-1])
            return parts[:-1], parts[-1].strip()
        except ValueError:
            pass
    return parts, default


def _ints(parts, spec):
    try:
        return tuple(int(x) for x in parts)
    except ValueError:
        raise FamilyError(f"bad integers in {spec!r}") from None


def from_spec(spec: str, N: int, ring: str = "Z") -> TruncatedFunctor:
    """Build a library functor from a ``family:params`` string."""
    spec = spec.strip()
    fam, _, params = spec.partition(":")
    parts = [p for p in params.split(",")] if params else []
    if fam == "const":
        txt = params or ring
        if txt.startswith("Z/"):
            A = FgAbGroup.cyclic(_ints([txt[2:]], spec)[0])
            T = constant_functor(A, N, "Z")
        else:
            try:
                kind, p = parse_ring(txt)
            except ValueError as e:
                raise FamilyError(str(e)) from None
            T = constant_functor(_scalar_group(txt, 1), N, _ring_tag(txt))
            T.name = f"const({_ring_tag(txt)})"
    elif fam == "kunneth":
        parts, r = _split_ring(parts, "Q")
        if not parts:
            raise FamilyError("kunneth needs a space")
        space, q = parts[0], None
        for p in parts[1:]:
            key, _, val = p.partition("=")
            if key.strip() != "q":
                raise FamilyError(f"unknown kunneth parameter {p!r}")
            q = _ints([val], spec)[0]
        if q is None:
            raise FamilyError("kunneth needs q=<degree>")
        T = kunneth_functor(named_space(space.strip()), q, r, N)
    elif fam == "partition":
        parts, r = _split_ring(parts, ring)
        T = partition_functor(_ints(parts, spec), r, N)
    elif fam == "interval":
        parts, r = _split_ring(parts, ring)
        lam, sep, mu = ",".join(parts).partition("/")
        if not sep:
            raise FamilyError("interval needs <lam>/<mu>")
        T = interval_partition_functor(_ints(lam.split(","), spec), _ints(mu.split(","), spec), r, N)
    elif fam == "sign-attempt":
        T = sign_extension_functor(max(N, 2))
    else:
        raise FamilyError(f"unknown family {fam!r}; expected one of: " + "; ".join(SPEC_FORMS))
    T.family = spec
    return T


LIBRARY = (
    "const:Z", "const:Z/2", "const:Q",
    "partition:1", "partition:2", "partition:1,1", "partition:2,1", "partition:3",
    "interval:1/2", "interval:1/1,1",
    "kunneth:circle,q=1,Q", "kunneth:circle,q=2,Q", "kunneth:S2,q=2,Q", "kunneth:circle,q=2,Z",
)


def example_library(N: int) -> dict:
    """spec -> functor for every well-formed example family."""
    return {s: from_spec(s, N) for s in LIBRARY}
