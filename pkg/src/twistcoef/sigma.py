"""The category of partial injections.

Objects are counts n >= 0 standing for {1..n}.  A morphism m -> n is an
injective partial map {1..m} -> {1..n}; composition is composition of partial
maps.  Everything here speaks 1-based indices; ``None`` marks "undefined".

Text notation: ``3->5:[2,-,4]`` is the morphism 3 -> 5 with 1 -> 2, 2
undefined, 3 -> 4.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from math import comb, factorial
from typing import Iterable, Optional, Sequence

DEFAULT_BOUND = 8


class SigmaError(ValueError):
    pass


@dataclass(frozen=True)
class PartialInjection:
    m: int
    n: int
    images: tuple  # images[i-1] = f(i) or None

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise SigmaError("object sizes must be nonnegative")
        if len(self.images) != self.m:
            raise SigmaError(f"need {self.m} images, got {len(self.images)}")
        seen = set()
        for v in self.images:
            if v is None:
                continue
            if not (1 <= v <= self.n):
                raise SigmaError(f"image {v} outside 1..{self.n}")
            if v in seen:
                raise SigmaError(f"image {v} hit twice; not injective")
            seen.add(v)

    def __call__(self, i: int) -> Optional[int]:
        if not (1 <= i <= self.m):
            raise SigmaError(f"{i} outside 1..{self.m}")
        return self.images[i - 1]

    @property
    def domain(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, v in enumerate(self.images) if v is not None)

    @property
    def image_set(self) -> frozenset:
        return frozenset(v for v in self.images if v is not None)

    @property
    def rank(self) -> int:
        return sum(1 for v in self.images if v is not None)

    def is_identity(self) -> bool:
        return self.m == self.n and all(v == i + 1 for i, v in enumerate(self.images))

    def is_permutation(self) -> bool:
        return self.m == self.n and self.rank == self.m

    def partial_inverse(self) -> PartialInjection:
        inv = [None] * self.n
        for i, v in enumerate(self.images):
            if v is not None:
                inv[v - 1] = i + 1
        return PartialInjection(self.n, self.m, tuple(inv))

    def __str__(self) -> str:
        body = ",".join("-" if v is None else str(v) for v in self.images)
        return f"{self.m}->{self.n}:[{body}]"

    def __repr__(self) -> str:
        return f"PartialInjection({self})"

    def __matmul__(self, other: PartialInjection) -> PartialInjection:
        return compose(self, other)


_NOTATION = re.compile(r"^\s*(\d+)\s*->\s*(\d+)\s*:\s*\[([^\]]*)\]\s*$")


def parse_morphism(text: str) -> PartialInjection:
    mt = _NOTATION.match(text)
    if not mt:
        raise SigmaError(f"cannot parse morphism {text!r}; expected like 3->5:[2,-,4]")
    m, n = int(mt.group(1)), int(mt.group(2))
    body = mt.group(3).strip()
    items = [s.strip() for s in body.split(",")] if body else []
    imgs = []
    for s in items:
        if s == "-":
            imgs.append(None)
        elif s.isdigit():
            imgs.append(int(s))
        else:
            raise SigmaError(f"bad image {s!r} in {text!r}")
    return PartialInjection(m, n, tuple(imgs))


def make(m: int, n: int, mapping: dict | Sequence) -> PartialInjection:
    """Build from a dict {i: f(i)} or a sequence of images (None = undefined)."""
    if isinstance(mapping, dict):
        imgs = tuple(mapping.get(i) for i in range(1, m + 1))
    else:
        imgs = tuple(mapping)
    return PartialInjection(m, n, imgs)


def compose(g: PartialInjection, f: PartialInjection) -> PartialInjection:
    """g o f."""
    if f.n != g.m:
        raise SigmaError(f"cannot compose {g} after {f}: object mismatch {f.n} != {g.m}")
    gi = g.images
    return PartialInjection(f.m, g.n, tuple(None if v is None else gi[v - 1] for v in f.images))


def compose_all(maps: Iterable[PartialInjection]) -> PartialInjection:
    """Composite of maps listed in application order."""
    it = iter(maps)
    out = next(it)
    for f in it:
        out = compose(f, out)
    return out


def identity(n: int) -> PartialInjection:
    return PartialInjection(n, n, tuple(range(1, n + 1)))


def empty_morphism(m: int, n: int) -> PartialInjection:
    return PartialInjection(m, n, (None,) * m)


def _check_subset(n, S):
    S = frozenset(S)
    bad = [s for s in S if not (1 <= s <= n)]
    if bad:
        raise SigmaError(f"indices {sorted(bad)} outside 1..{n}")
    return S


def forget_morphism(n: int, S: Iterable[int]) -> PartialInjection:
    """f_S: identity off S, undefined on S."""
    S = _check_subset(n, S)
    return PartialInjection(n, n, tuple(None if i in S else i for i in range(1, n + 1)))


def iota(n: int) -> PartialInjection:
    """n -> n+1, i -> i+1; the new point is 1."""
    return PartialInjection(n, n + 1, tuple(range(2, n + 2)))


def pi(n_plus_1: int) -> PartialInjection:
    """n+1 -> n, 1 undefined, i -> i-1."""
    if n_plus_1 < 1:
        raise SigmaError("pi needs a source of size >= 1")
    return PartialInjection(n_plus_1, n_plus_1 - 1, (None,) + tuple(range(1, n_plus_1)))


def transposition(i: int, n: int) -> PartialInjection:
    """The permutation of {1..n} swapping i and i+1."""
    if not (1 <= i < n):
        raise SigmaError(f"transposition ({i},{i + 1}) not in S_{n}")
    imgs = list(range(1, n + 1))
    imgs[i - 1], imgs[i] = imgs[i], imgs[i - 1]
    return PartialInjection(n, n, tuple(imgs))


def permutation(images: Sequence[int]) -> PartialInjection:
    n = len(images)
    if sorted(images) != list(range(1, n + 1)):
        raise SigmaError(f"{list(images)} is not a permutation")
    return PartialInjection(n, n, tuple(images))


def stabilize_morphism(f: PartialInjection) -> PartialInjection:
    """S f: m+1 -> n+1 fixing 1 and acting as f on the shifted rest."""
    return PartialInjection(f.m + 1, f.n + 1, (1,) + tuple(None if v is None else v + 1 for v in f.images))


def order_preserving_projection(n: int, S: Iterable[int]) -> PartialInjection:
    """pi_{S,n}: n -> |S|, the j-th smallest element of S goes to j."""
    S = sorted(_check_subset(n, S))
    pos = {s: j + 1 for j, s in enumerate(S)}
    return PartialInjection(n, len(S), tuple(pos.get(i) for i in range(1, n + 1)))


def shift_down(S: Iterable[int]) -> frozenset:
    """S - 1 = {s-1 : s in S}."""
    return frozenset(s - 1 for s in S)


# ---------------------------------------------------------------------------
# enumeration

def hom_count(m: int, n: int) -> int:
    return sum(comb(m, k) * comb(n, k) * factorial(k) for k in range(min(m, n) + 1))


@lru_cache(maxsize=None)
def _enumerate(m: int, n: int) -> tuple:
    out = []
    for k in range(min(m, n) + 1):
        for dom in combinations(range(m), k):
            for img in permutations(range(1, n + 1), k):
                imgs = [None] * m
                for d, v in zip(dom, img):
                    imgs[d] = v
                out.append(PartialInjection(m, n, tuple(imgs)))
    return tuple(out)


def enumerate_hom(m: int, n: int, bound: int = DEFAULT_BOUND) -> list[PartialInjection]:
    if m > bound or n > bound:
        raise SigmaError(f"objects {m},{n} exceed the truncation bound {bound}")
    if m < 0 or n < 0:
        raise SigmaError("object sizes must be nonnegative")
    return list(_enumerate(m, n))


def enumerate_all(bound: int) -> list[PartialInjection]:
    return [f for m in range(bound + 1) for n in range(bound + 1) for f in enumerate_hom(m, n, bound)]


# ---------------------------------------------------------------------------
# generator words

@dataclass(frozen=True)
class Atom:
    """One generator: ('iota', n), ('pi', n+1) or ('sigma', n, i)."""
    kind: str
    n: int
    i: int = 0

    @property
    def source(self) -> int:
        return self.n

    @property
    def target(self) -> int:
        return {"iota": self.n + 1, "pi": self.n - 1, "sigma": self.n}[self.kind]

    def morphism(self) -> PartialInjection:
        if self.kind == "iota":
            return iota(self.n)
        if self.kind == "pi":
            return pi(self.n)
        return transposition(self.i, self.n)

    def __str__(self):
        if self.kind == "sigma":
            return f"sigma({self.i},{self.n})"
        return f"{self.kind}({self.n})"


def IOTA(n):
    return Atom("iota", n)


def PI(n_plus_1):
    return Atom("pi", n_plus_1)


def SIGMA(i, n):
    return Atom("sigma", n, i)


def all_atoms(bound: int) -> list[Atom]:
    out = []
    for n in range(bound + 1):
        if n < bound:
            out.append(IOTA(n))
        if n >= 1:
            out.append(PI(n))
        for i in range(1, n):
            out.append(SIGMA(i, n))
    return out


class GeneratorWord(tuple):
    """Atoms in application order (first atom is applied first)."""

    def check(self) -> None:
        for a, b in zip(self, self[1:]):
            if a.target != b.source:
                raise SigmaError(f"{a} then {b} do not compose")

    def evaluate(self, source: int) -> PartialInjection:
        f = identity(source)
        for a in self:
            f = compose(a.morphism(), f)
        return f

    def __str__(self):
        return " ; ".join(str(a) for a in self) if self else "(empty)"


def permutation_word(p: PartialInjection) -> list[Atom]:
    """Adjacent transpositions (application order) whose product is p."""
    n = p.m
    cur = list(p.images)
    word = []
    # p = p' o s_i whenever p(i) > p(i+1); s_i is applied first
    changed = True
    while changed:
        changed = False
        for i in range(n - 1):
            if cur[i] > cur[i + 1]:
                cur[i], cur[i + 1] = cur[i + 1], cur[i]
                word.append(SIGMA(i + 1, n))
                changed = True
    return word


def decompose_into_generators(f: PartialInjection) -> GeneratorWord:
    """f = sigma_t o iota^(n-k) o pi^(m-k) o sigma_s, as a generator word."""
    m, n = f.m, f.n
    dom = list(f.domain)
    k = len(dom)
    undefined = [i for i in range(1, m + 1) if f.images[i - 1] is None]
    # sigma_s moves the undefined points to the front and keeps dom in order
    order = undefined + dom
    src_imgs = [0] * m
    for pos, i in enumerate(order):
        src_imgs[i - 1] = pos + 1
    sigma_s = PartialInjection(m, m, tuple(src_imgs))
    # after the pis and iotas, dom[j] sits at n-k+1+j; send it to f(dom[j])
    tgt = [None] * n
    used = set()
    for j, d in enumerate(dom):
        tgt[n - k + j] = f.images[d - 1]
        used.add(f.images[d - 1])
    rest = iter(v for v in range(1, n + 1) if v not in used)
    for a in range(n - k):
        tgt[a] = next(rest)
    sigma_t = PartialInjection(n, n, tuple(tgt))
    word = permutation_word(sigma_s)
    word += [PI(j) for j in range(m, k, -1)]
    word += [IOTA(j) for j in range(k, n)]
    word += permutation_word(sigma_t)
    w = GeneratorWord(word)
    return w
