"""Symmetric groups and their Young (parabolic) subgroups.

A permutation of {1..n} is a tuple ``p`` with ``p[i-1]`` the image of i, the
same convention as ``PartialInjection.images``.  ``PermGroup(n, gens)`` is the
subgroup generated by the adjacent transpositions s_i = (i, i+1), i in gens.
"""

from __future__ import annotations

from functools import lru_cache
from math import factorial

import numpy as np


class GroupError(ValueError):
    pass


def perm_compose(a: tuple, b: tuple) -> tuple:
    """a o b."""
    return tuple(a[x - 1] for x in b)


def perm_inverse(a: tuple) -> tuple:
    inv = [0] * len(a)
    for i, v in enumerate(a):
        inv[v - 1] = i + 1
    return tuple(inv)


def simple_transposition(i: int, n: int) -> tuple:
    p = list(range(1, n + 1))
    p[i - 1], p[i] = p[i], p[i - 1]
    return tuple(p)


def shift_perm(p: tuple) -> tuple:
    """The permutation of {1..n+1} fixing 1 and acting as p on {2..n+1}."""
    return (1,) + tuple(x + 1 for x in p)


class PermGroup:
    def __init__(self, n: int, gens=None):
        if n < 0:
            raise GroupError("degree must be >= 0")
        gens = tuple(range(1, n)) if gens is None else tuple(sorted(set(gens)))
        if any(not (1 <= i < n) for i in gens):
            raise GroupError(f"generators {gens} are not adjacent transpositions of S_{n}")
        self.n = n
        self.gens = gens
        ident = tuple(range(1, n + 1))
        gen_perms = [simple_transposition(i, n) for i in gens]
        # breadth-first closure; parent[g] = (generator position, element) with g = s * element
        elements = [ident]
        index = {ident: 0}
        parent = [None]
        frontier = [ident]
        while frontier:
            nxt = []
            for g in frontier:
                for k, s in enumerate(gen_perms):
                    h = perm_compose(s, g)
                    if h not in index:
                        index[h] = len(elements)
                        elements.append(h)
                        parent.append((k, index[g]))
                        nxt.append(h)
            frontier = nxt
        self.elements = elements
        self.index = index
        self.parent = parent
        self._table = None

    @classmethod
    def symmetric(cls, n: int) -> PermGroup:
        return _symmetric(n)

    @classmethod
    def young(cls, n: int, k: int) -> PermGroup:
        """S_{n-k} x S_k, the first factor on {1..n-k} and the second on {n-k+1..n}."""
        if not (0 <= k <= n):
            raise GroupError(f"need 0 <= k <= n, got k={k}, n={n}")
        return _young(n, k)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"PermGroup(n={self.n}, gens={list(self.gens)}, order={self.order})"

    def is_full_symmetric(self) -> bool:
        return self.order == factorial(self.n)

    def identity_index(self) -> int:
        return 0

    def gen_index(self, k: int) -> int:
        return self.index[simple_transposition(self.gens[k], self.n)]

    @property
    def table(self) -> np.ndarray:
        """table[a, b] = index of elements[a] o elements[b]."""
        if self._table is None:
            N = self.order
            t = np.empty((N, N), dtype=np.int32)
            els, idx = self.elements, self.index
            for a, g in enumerate(els):
                t[a] = [idx[perm_compose(g, h)] for h in els]
            self._table = t
        return self._table

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    @property
    def inverse(self) -> np.ndarray:
        inv = getattr(self, "_inverse", None)
        if inv is None:
            inv = np.array([self.index[perm_inverse(g)] for g in self.elements], dtype=np.int32)
            self._inverse = inv
        return inv

    def word(self, g: int) -> list[int]:
        """Generator positions k with g = s_{k1} s_{k2} ... (leftmost first)."""
        out = []
        while self.parent[g] is not None:
            k, g = self.parent[g]
            out.append(k)
        return out

    def coxeter_relations(self) -> list[tuple]:
        """Relator words in generator positions: s_i^2 and (s_i s_j)^m_ij."""
        rels = []
        for a in range(len(self.gens)):
            rels.append((a, a))
        for a in range(len(self.gens)):
            for b in range(a + 1, len(self.gens)):
                m = 3 if self.gens[b] == self.gens[a] + 1 else 2
                rels.append((a, b) * m)
        return rels

    def check_closed(self) -> bool:
        """Closure under composition and inverses (exhaustive)."""
        idx = self.index
        for g in self.elements:
            if perm_inverse(g) not in idx:
                return False
            for h in self.elements:
                if perm_compose(g, h) not in idx:
                    return False
        return True


@lru_cache(maxsize=None)
def _symmetric(n):
    return PermGroup(n)


@lru_cache(maxsize=None)
def _young(n, k):
    return PermGroup(n, [i for i in range(1, n) if i != n - k])
