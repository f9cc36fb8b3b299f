"""Truncated functors from partial injections to abelian groups.

A ``TruncatedFunctor`` knows one diagonal ``FgAbGroup`` per object 0..N and
how to act on morphisms.  The action comes either from images of the
generators iota(n), pi(n+1), sigma(i,n) (expanded along a generator word),
or from a direct evaluator supplied by a family constructor.  In the second
case the generator images are derived from the evaluator, and comparing the
two routes is what the functoriality check does.

Rings: "Z" functors are arbitrary.  "Fp:p" functors have groups (Z/p)^r.
"Q" functors are stored as integral lattices (free groups, integer matrices);
whenever a construction produces torsion it is discarded, which is the same
as tensoring with Q.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Optional

from .linalg import (AbMap, FgAbGroup, IntMatrix, cokernel, direct_sum_groups, factor_through, hstack,
                     image, intersect_subgroups, kernel, kron, parse_ring, preimage_element, block_diagonal)
from . import sigma as sg
from .sigma import Atom, PartialInjection


class FunctorError(ValueError):
    pass


def _ring_tag(ring: str) -> str:
    kind, p = parse_ring(ring)
    return f"Fp:{p}" if kind == "Fp" else kind


class TruncatedFunctor:
    def __init__(self, N: int, groups: list[FgAbGroup], gen_images: Optional[dict] = None, *,
                 evaluator: Optional[Callable[[PartialInjection], IntMatrix]] = None,
                 ring: str = "Z", name: str = ""):
        if len(groups) != N + 1:
            raise FunctorError(f"need {N + 1} groups for truncation {N}, got {len(groups)}")
        for n, G in enumerate(groups):
            if G.diagonal is None:
                raise FunctorError(f"group at object {n} must be given in diagonal form")
        if gen_images is None and evaluator is None:
            raise FunctorError("need generator images or an evaluator")
        self.N = N
        self.groups = list(groups)
        self.ring = _ring_tag(ring)
        self.name = name
        self._evaluator = evaluator
        self._gens = dict(gen_images) if gen_images is not None else None
        if self._gens is not None:
            for a in sg.all_atoms(N):
                if a not in self._gens:
                    raise FunctorError(f"missing image for generator {a}")
                g = self._gens[a]
                if g.source is not self.groups[a.source] or g.target is not self.groups[a.target]:
                    g = AbMap(self.groups[a.source], self.groups[a.target], g.matrix, check=False)
                    self._gens[a] = g
        self._cache: dict = {}
        self._ce_cache: dict = {}

    # -- basic access ---------------------------------------------------
    def group(self, n: int) -> FgAbGroup:
        if not (0 <= n <= self.N):
            raise FunctorError(f"object {n} outside 0..{self.N}")
        return self.groups[n]

    def gen(self, a: Atom) -> AbMap:
        if self._gens is not None:
            return self._gens[a]
        return self.map(a.morphism())

    def generator_images(self) -> dict:
        return {a: self.gen(a) for a in sg.all_atoms(self.N)}

    def map(self, f: PartialInjection) -> AbMap:
        """T(f), memoized."""
        hit = self._cache.get(f)
        if hit is not None:
            return hit
        if f.m > self.N or f.n > self.N:
            raise FunctorError(f"{f} leaves the truncation 0..{self.N}")
        src, tgt = self.groups[f.m], self.groups[f.n]
        if self._evaluator is not None:
            M = self._evaluator(f)
            out = AbMap(src, tgt, M, check=False).reduced()
        else:
            word = sg.decompose_into_generators(f)
            if not word:
                out = AbMap.identity(src)
            else:
                last = word[-1]
                prefix = sg.GeneratorWord(word[:-1]).evaluate(f.m)
                out = (self._gens[last] @ self.map(prefix)).reduced() if word[:-1] else self._gens[last]
        self._cache[f] = out
        return out

    def is_zero(self) -> bool:
        return all(G.is_zero() for G in self.groups)

    def ranks(self) -> list[int]:
        return [G.rank for G in self.groups]

    def describe(self) -> list[str]:
        return [G.describe() for G in self.groups]

    def __repr__(self):
        nm = f" {self.name}" if self.name else ""
        return f"TruncatedFunctor{nm}(N={self.N}, ring={self.ring}, groups=[{', '.join(self.describe())}])"

    def with_generators(self, gen_images: dict, name: str | None = None) -> TruncatedFunctor:
        """Same groups, new generator images (used to build corrupted controls)."""
        return TruncatedFunctor(self.N, self.groups, gen_images, ring=self.ring,
                                name=self.name if name is None else name)

    def frozen(self) -> TruncatedFunctor:
        """Copy defined purely by generator images."""
        return TruncatedFunctor(self.N, self.groups, self.generator_images(), ring=self.ring, name=self.name)

    def truncate(self, N: int) -> TruncatedFunctor:
        if N > self.N:
            raise FunctorError("cannot raise the truncation")
        if self._evaluator is not None:
            return TruncatedFunctor(N, self.groups[:N + 1], evaluator=self._evaluator, ring=self.ring, name=self.name)
        gens = {a: self._gens[a] for a in sg.all_atoms(N)}
        return TruncatedFunctor(N, self.groups[:N + 1], gens, ring=self.ring, name=self.name)

    # -- functoriality --------------------------------------------------
    def check_functoriality(self, bound: Optional[int] = None, samples: int = 200, seed: int = 0,
                            cancel=None) -> FunctorialityReport:
        """Check T(a o f) = T(a) T(f) for every generator a and every f with
        objects <= bound, plus well-definedness of generator images and random
        composable pairs above the bound.

        With T(f) defined along generator words, the exhaustive part implies
        T(g o f) = T(g) T(f) for all g, f with objects <= bound (induction on
        the length of the word of g).
        """
        bound = min(self.N, 5) if bound is None else min(bound, self.N)
        checked = 0
        for a in sg.all_atoms(self.N):
            g = self.gen(a)
            if not g.is_well_defined():
                return FunctorialityReport(False, checked, f"image of {a} does not respect relations",
                                           (str(a),))
        atoms = sg.all_atoms(bound)
        by_source: dict = {}
        for a in atoms:
            by_source.setdefault(a.source, []).append(a)
        for m in range(bound + 1):
            if not self.map(sg.identity(m)).equals(AbMap.identity(self.groups[m])):
                return FunctorialityReport(False, checked, f"T(id_{m}) is not the identity", (f"id_{m}",))
        for m in range(bound + 1):
            for n in range(bound + 1):
                for f in sg.enumerate_hom(m, n, max(bound, sg.DEFAULT_BOUND)):
                    if cancel is not None and cancel.is_set():
                        from .linalg import Cancelled
                        raise Cancelled("functoriality check cancelled")
                    Tf = self.map(f)
                    for a in by_source.get(n, ()):
                        lhs = self.map(sg.compose(a.morphism(), f))
                        rhs = self.gen(a) @ Tf
                        checked += 1
                        if not lhs.equals(rhs):
                            return FunctorialityReport(
                                False, checked,
                                f"T({a} o {f}) != T({a}) T({f})", (str(a.morphism()), str(f)))
        rng = random.Random(seed)
        if self.N > bound:
            for _ in range(samples):
                l, m, n = (rng.randint(0, self.N) for _ in range(3))
                f = _random_morphism(rng, l, m)
                g = _random_morphism(rng, m, n)
                checked += 1
                if not self.map(sg.compose(g, f)).equals(self.map(g) @ self.map(f)):
                    return FunctorialityReport(False, checked, f"T({g} o {f}) != T({g}) T({f})",
                                               (str(g), str(f)))
        return FunctorialityReport(True, checked, "ok", ())

    def relation_witness(self, g: PartialInjection, f: PartialInjection) -> bool:
        return self.map(sg.compose(g, f)).equals(self.map(g) @ self.map(f))

    # -- cross effects --------------------------------------------------
    def forget(self, n: int, S: Iterable[int]) -> AbMap:
        return self.map(sg.forget_morphism(n, S))

    def projector(self, n: int, partition) -> IntMatrix:
        """T(f_{n - S}) prod_i (1 - T(f_{S_i})) as a matrix on T_n."""
        blocks = _normalize_partition(n, partition)
        S = frozenset().union(*blocks) if blocks else frozenset()
        rest = frozenset(range(1, n + 1)) - S
        P = self.forget(n, rest).matrix
        I = IntMatrix.identity(self.groups[n].ngens)
        for B in blocks:
            P = P @ (I - self.forget(n, B).matrix)
        return P

    def cross_effect(self, n: int, partition, method: str = "projector") -> CrossEffect:
        blocks = _normalize_partition(n, partition)
        if n > self.N:
            raise FunctorError(f"object {n} beyond truncation {self.N}")
        key = (n, blocks, method)
        hit = self._ce_cache.get(key)
        if hit is not None:
            return hit
        Tn = self.groups[n]
        if method == "projector":
            P = AbMap(Tn, Tn, self.projector(n, blocks), check=False)
            G, inc = image(P)
        elif method == "intersection":
            S = frozenset().union(*blocks) if blocks else frozenset()
            rest = frozenset(range(1, n + 1)) - S
            pieces = [image(self.forget(n, rest))[1]]
            pieces += [kernel(self.forget(n, B))[1] for B in blocks]
            G, inc = intersect_subgroups(pieces)
        else:
            raise ValueError(f"unknown method {method!r}")
        ce = CrossEffect(n, blocks, G, inc)
        self._ce_cache[key] = ce
        return ce

    def top_piece(self, n: int, k: int) -> CrossEffect:
        """T_n^k = T_n[{n-k+1..n}^delta]."""
        return self.cross_effect(n, [{i} for i in range(n - k + 1, n + 1)])


def _random_morphism(rng, m, n) -> PartialInjection:
    k = rng.randint(0, min(m, n))
    dom = rng.sample(range(1, m + 1), k)
    img = rng.sample(range(1, n + 1), k)
    mp = dict(zip(dom, img))
    return sg.make(m, n, mp)


def _normalize_partition(n, partition) -> tuple:
    blocks = []
    seen = set()
    for B in partition:
        B = frozenset(B)
        if not B:
            raise FunctorError("partition blocks must be nonempty")
        if any(not (1 <= i <= n) for i in B):
            raise FunctorError(f"block {sorted(B)} not inside 1..{n}")
        if B & seen:
            raise FunctorError("partition blocks overlap")
        seen |= B
        blocks.append(B)
    return tuple(sorted(blocks, key=lambda b: sorted(b)))


@dataclass(frozen=True)
class FunctorialityReport:
    ok: bool
    checked: int
    message: str
    witness: tuple


@dataclass(frozen=True)
class CrossEffect:
    n: int
    partition: tuple
    group: FgAbGroup
    inclusion: AbMap

    def label(self) -> str:
        return "|".join("{" + ",".join(map(str, sorted(B))) + "}" for B in self.partition) or "[]"


def contained_in(f: AbMap, j: AbMap) -> bool:
    """Is im f inside im j (same target)?"""
    for c in range(f.source.ngens):
        if preimage_element(j, f.matrix.column(c)) is None:
            return False
    return True


def same_subgroup(i1: AbMap, i2: AbMap) -> bool:
    return contained_in(i1, i2) and contained_in(i2, i1)


def _sum_map(target: FgAbGroup, incs: list[AbMap]) -> AbMap:
    S = direct_sum_groups([i.source for i in incs])
    M = hstack(*[i.matrix for i in incs]) if incs else IntMatrix.zeros(target.ngens, 0)
    return AbMap(S, target, M, check=False)


def is_internal_direct_sum(whole: AbMap, parts: list[AbMap]) -> bool:
    """Is the subgroup im(whole) the internal direct sum of the im(parts)?"""
    s = _sum_map(whole.target, parts)
    try:
        g = factor_through(s, whole)
    except ValueError:
        return False
    return g.is_iso()


# ---------------------------------------------------------------------------
# Delta, degree, height

def delta(T: TruncatedFunctor) -> TruncatedFunctor:
    """Delta T = coker(T iota: T => T S), truncated at N-1."""
    if T.N < 1:
        raise FunctorError("delta needs truncation >= 1")
    quots, lifts, groups = [], [], []
    drop_torsion = T.ring == "Q"
    for n in range(T.N):
        C, q = cokernel(T.gen(sg.IOTA(n)))
        lift = _lift_of_simplified(C, q)
        if drop_torsion:
            C, q, lift = _free_quotient(C, q, lift)
        groups.append(C)
        quots.append(q)
        lifts.append(lift)

    def ev(f: PartialInjection) -> IntMatrix:
        Tsf = T.map(sg.stabilize_morphism(f))
        return (quots[f.n].matrix @ Tsf.matrix) @ lifts[f.m]

    return TruncatedFunctor(T.N - 1, groups, evaluator=ev, ring=T.ring,
                            name=f"Delta({T.name})" if T.name else "")


def _lift_of_simplified(C: FgAbGroup, q: AbMap) -> IntMatrix:
    """Matrix sending each generator of C to a preimage under the surjection q."""
    cols = []
    for i in range(C.ngens):
        e = [0] * C.ngens
        e[i] = 1
        x = preimage_element(q, e)
        if x is None:
            raise FunctorError("quotient map is not surjective")
        cols.append(x)
    return IntMatrix.from_columns(cols, q.source.ngens)


def _free_quotient(C: FgAbGroup, q: AbMap, lift: IntMatrix):
    d = C.diagonal
    free = [i for i, k in enumerate(d) if k == 0]
    F = FgAbGroup.free(len(free))
    qm = IntMatrix([q.matrix.data[i] for i in free], len(free), q.matrix.cols)
    lm = IntMatrix([[lift.data[r][i] for i in free] for r in range(lift.rows)], lift.rows, len(free))
    return F, AbMap(q.source, F, qm, check=False), lm


@dataclass(frozen=True)
class DegreeResult:
    value: int
    status: str  # "exact" or "lower_bound"
    witness: Optional[int] = None  # an object where the last nonzero Delta power lives

    @property
    def determinate(self) -> bool:
        return self.status == "exact"

    def __str__(self):
        if self.status == "exact":
            w = f" (Delta^{self.value} T nonzero at n={self.witness})" if self.witness is not None else ""
            return f"{self.value}{w}"
        return f">= {self.value} (indeterminate at truncation)"


@dataclass(frozen=True)
class HeightResult:
    value: int
    status: str
    witness: Optional[tuple] = None  # (n, k) with T_n^k != 0

    @property
    def determinate(self) -> bool:
        return self.status == "exact"

    def __str__(self):
        if self.status == "exact":
            w = f" (T_{self.witness[0]}^{self.witness[1]} != 0)" if self.witness else ""
            return f"{self.value}{w}"
        return f">= {self.value} (indeterminate at truncation)"


def delta_tower(T: TruncatedFunctor) -> list[TruncatedFunctor]:
    out = [T]
    while out[-1].N >= 1 and not out[-1].is_zero():
        out.append(delta(out[-1]))
    return out


def degree(T: TruncatedFunctor) -> DegreeResult:
    """Smallest d with Delta^(d+1) T zero on the remaining truncation."""
    cur, d, wit = T, -1, None
    while not cur.is_zero():
        wit = next(n for n, G in enumerate(cur.groups) if not G.is_zero())
        if cur.N == 0:
            return DegreeResult(d + 1, "lower_bound", wit)
        cur = delta(cur)
        d += 1
    return DegreeResult(d, "exact", wit)


def height(T: TruncatedFunctor) -> HeightResult:
    best = -1
    wit = None
    for n in range(T.N + 1):
        for k in range(n + 1):
            if k <= best:
                continue
            if not T.top_piece(n, k).group.is_zero():
                best, wit = k, (n, k)
    if best == T.N:
        return HeightResult(best, "lower_bound", wit)
    return HeightResult(best, "exact", wit)


# ---------------------------------------------------------------------------
# decomposition

@dataclass
class DecompositionReport:
    n: int
    summands: dict  # frozenset Q -> CrossEffect
    witness: AbMap  # direct sum of summands -> T_n
    witness_is_iso: bool
    transitive_ok: bool
    young_invariant_ok: bool
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.witness_is_iso and self.transitive_ok and self.young_invariant_ok and not self.failures

    def rank_total(self) -> int:
        return sum(ce.group.rank for ce in self.summands.values())


def subsets(n: int):
    for k in range(n + 1):
        for Q in combinations(range(1, n + 1), k):
            yield frozenset(Q)


def decompose(T: TruncatedFunctor, n: int) -> DecompositionReport:
    if n > T.N:
        raise FunctorError(f"object {n} beyond truncation {T.N}")
    Tn = T.groups[n]
    summands = {Q: T.cross_effect(n, [{i} for i in sorted(Q)]) for Q in subsets(n)}
    order = list(subsets(n))
    wit = _sum_map(Tn, [summands[Q].inclusion for Q in order])
    iso = wit.is_iso()
    failures = []
    if not iso:
        failures.append(f"sum of cross effects is not all of T_{n}")
    # adjacent transpositions permute the summands: T(s) T_n[Q] in T_n[s(Q)]
    trans_ok = True
    for i in range(1, n):
        s = sg.transposition(i, n)
        Ts = T.map(s)
        for Q in order:
            sQ = frozenset(s(q) for q in Q)
            if not contained_in(Ts @ summands[Q].inclusion, summands[sQ].inclusion):
                trans_ok = False
                failures.append(f"T({s}) does not carry T_{n}[{sorted(Q)}] into T_{n}[{sorted(sQ)}]")
    # Young subgroup Sigma_{n-k} x Sigma_k preserves T_n^k
    young_ok = True
    for k in range(n + 1):
        top = T.top_piece(n, k).inclusion
        for i in range(1, n):
            if i == n - k:
                continue
            if not contained_in(T.map(sg.transposition(i, n)) @ top, top):
                young_ok = False
                failures.append(f"T_{n}^{k} not preserved by sigma({i},{n})")
    return DecompositionReport(n, summands, wit, iso, trans_ok, young_ok, failures)


# ---------------------------------------------------------------------------
# lemma suite

@dataclass
class LemmaReport:
    checks: dict = field(default_factory=dict)  # name -> number of cases checked
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def count(self, name):
        self.checks[name] = self.checks.get(name, 0) + 1


def _set_partitions(items):
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for p in _set_partitions(rest):
        yield [[first]] + p
        for i in range(len(p)):
            yield p[:i] + [[first] + p[i]] + p[i + 1:]


def check_bijection(T: TruncatedFunctor, bound: int, rep: LemmaReport):
    for n in range(bound + 1):
        for m in range(n + 1):
            iota_mn = sg.identity(m)
            for j in range(m, n):
                iota_mn = sg.compose(sg.iota(j), iota_mn)
            Tmn = T.map(iota_mn)
            for k in range(m + 1):
                src = T.top_piece(m, k).inclusion
                tgt = T.top_piece(n, k).inclusion
                rep.count("bijection")
                try:
                    g = factor_through(Tmn @ src, tgt)
                except ValueError:
                    rep.failures.append(f"iota_{m}^{n} does not send T_{m}^{k} into T_{n}^{k}")
                    continue
                if not g.is_iso():
                    rep.failures.append(f"iota_{m}^{n}: T_{m}^{k} -> T_{n}^{k} not bijective")


def check_ses(T: TruncatedFunctor, bound: int, rep: LemmaReport):
    for n in range(bound + 1):
        for S in subsets(n):
            for part in _set_partitions(sorted(S)):
                if len(part) < 2:
                    continue
                for a in range(len(part)):
                    for b in range(len(part)):
                        if a == b:
                            continue
                        S1, S2 = part[a], part[b]
                        others = [B for c, B in enumerate(part) if c not in (a, b)]
                        whole = T.cross_effect(n, [S1 + S2] + others).inclusion
                        p_all = T.cross_effect(n, [S1, S2] + others).inclusion
                        p_2 = T.cross_effect(n, [S2] + others).inclusion
                        p_1 = T.cross_effect(n, [S1] + others).inclusion
                        rep.count("ses")
                        if not is_internal_direct_sum(whole, [p_all, p_2, p_1]):
                            rep.failures.append(f"three-term splitting fails at n={n} S1={S1} S2={S2} rest={others}")


def check_decomp_general(T: TruncatedFunctor, bound: int, rep: LemmaReport):
    for n in range(bound + 1):
        for S in subsets(n):
            if not S:
                continue
            for R in subsets(n):
                if R & S:
                    continue
                whole = T.cross_effect(n, [S] + [{r} for r in R]).inclusion
                parts = []
                for k in range(1, len(S) + 1):
                    for Q in combinations(sorted(S), k):
                        parts.append(T.cross_effect(n, [{q} for q in Q] + [{r} for r in R]).inclusion)
                rep.count("decomp_general")
                if not is_internal_direct_sum(whole, parts):
                    rep.failures.append(f"general decomposition fails at n={n} S={sorted(S)} R={sorted(R)}")


def verify_lemma_suite(T: TruncatedFunctor, bound: Optional[int] = None,
                       bijection_bound: Optional[int] = None) -> LemmaReport:
    bound = min(T.N, 4) if bound is None else min(bound, T.N)
    bij = min(T.N, 5) if bijection_bound is None else min(bijection_bound, T.N)
    rep = LemmaReport()
    check_bijection(T, bij, rep)
    check_ses(T, bound, rep)
    check_decomp_general(T, bound, rep)
    d = degree(T)
    h = height(T)
    rep.count("height_le_degree")
    if d.determinate and h.determinate and h.value > d.value:
        rep.failures.append(f"height {h.value} exceeds degree {d.value}")
    return rep


def cross_effect_paths_agree(T: TruncatedFunctor, n: int, partition) -> bool:
    a = T.cross_effect(n, partition, "projector")
    b = T.cross_effect(n, partition, "intersection")
    return a.group.isomorphic(b.group) and same_subgroup(a.inclusion, b.inclusion)


# ---------------------------------------------------------------------------
# objectwise constructions

def _check_same_N(T, U):
    if T.N != U.N:
        raise FunctorError(f"truncation mismatch {T.N} vs {U.N}")


def direct_sum(T: TruncatedFunctor, U: TruncatedFunctor) -> TruncatedFunctor:
    _check_same_N(T, U)
    groups = [direct_sum_groups([a, b]) for a, b in zip(T.groups, U.groups)]

    def ev(f):
        return block_diagonal(T.map(f).matrix, U.map(f).matrix)

    return TruncatedFunctor(T.N, groups, evaluator=ev, ring=_join_ring(T, U),
                            name=f"({T.name} + {U.name})")


def _join_ring(T, U):
    if T.ring != U.ring:
        raise FunctorError(f"ring mismatch {T.ring} vs {U.ring}")
    return T.ring


def _tensor_groups(A: FgAbGroup, B: FgAbGroup):
    """Diagonal tensor product and the list of kept index pairs."""
    from math import gcd
    invs = []
    for a in A.diagonal:
        for b in B.diagonal:
            invs.append(gcd(a, b))
    keep = [i for i, k in enumerate(invs) if k != 1]
    return FgAbGroup.from_invariants([invs[i] for i in keep]), keep


def tensor(T: TruncatedFunctor, U: TruncatedFunctor) -> TruncatedFunctor:
    _check_same_N(T, U)
    ring = _join_ring(T, U)
    info = [_tensor_groups(a, b) for a, b in zip(T.groups, U.groups)]

    def ev(f):
        K = kron(T.map(f).matrix, U.map(f).matrix)
        rows, cols = info[f.n][1], info[f.m][1]
        return K.submatrix(rows, cols)

    return TruncatedFunctor(T.N, [g for g, _ in info], evaluator=ev, ring=ring,
                            name=f"({T.name} (x) {U.name})")


def tensor_with_group(T: TruncatedFunctor, A: FgAbGroup) -> TruncatedFunctor:
    A = A.simplify()[0]
    info = [_tensor_groups(G, A) for G in T.groups]
    IA = IntMatrix.identity(A.ngens)

    def ev(f):
        K = kron(T.map(f).matrix, IA)
        return K.submatrix(info[f.n][1], info[f.m][1])

    return TruncatedFunctor(T.N, [g for g, _ in info], evaluator=ev, ring=T.ring,
                            name=f"({T.name} (x) {A.describe()})")


def zero_functor(N: int, ring: str = "Z") -> TruncatedFunctor:
    groups = [FgAbGroup.zero() for _ in range(N + 1)]
    return TruncatedFunctor(N, groups, evaluator=lambda f: IntMatrix.zeros(0, 0), ring=ring, name="zero")
