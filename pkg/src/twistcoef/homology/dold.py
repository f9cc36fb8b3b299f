"""Split-injectivity of a chain of maps from transfer-like maps.

Data: groups A_1, A_2, ... with maps phi_n : A_n -> A_{n+1} and maps
tau_{k,n} : A_n -> A_k (1 <= k <= n) with tau_{n,n} = id.  If

    im(tau_{k,n} - tau_{k,n+1} o phi_n)  is contained in  im(phi_{k-1})

(phi_0 = 0), then theta_n = (q_k o tau_{k,n})_k : A_n -> sum_{k<=n} coker(phi_{k-1})
is an isomorphism compatible with phi, and rho_n = theta_n^{-1} o proj o theta_{n+1}
is a left inverse of phi_n.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from ..functor import TruncatedFunctor
from ..linalg import (AbMap, FgAbGroup, IntMatrix, cokernel, direct_sum_groups, parse_ring, preimage_element,
                      vstack)
from .. import sigma as sg
from .gmodule import GModule, module_over_ring


@dataclass
class DoldData:
    A: dict  # n -> FgAbGroup, n = 1..N
    phi: dict  # n -> AbMap A_n -> A_{n+1}, n = 1..N-1
    tau: dict  # (k, n) -> AbMap A_n -> A_k, 1 <= k <= n <= N
    label: str = ""

    @property
    def N(self) -> int:
        return max(self.A)


@dataclass
class DoldResult:
    ok: bool
    message: str
    witness: Optional[tuple] = None  # (k, n, element of A_n)
    rho: dict = field(default_factory=dict)  # n -> left inverse of phi_n
    checked: int = 0

    def lines(self) -> list[str]:
        out = [f"hypothesis checks: {self.checked}", f"result: {'PASS' if self.ok else 'FAIL'} ({self.message})"]
        if self.witness:
            k, n, x = self.witness
            out.append(f"witness: k={k}, n={n}, x={list(x)}")
        for n in sorted(self.rho):
            out.append(f"rho_{n}: A_{n + 1} -> A_{n} matrix {self.rho[n].matrix.data}")
        return out


def check_hypothesis(data: DoldData):
    """(ok, witness, count): witness = (k, n, x) with the difference of x outside im phi_{k-1}."""
    count = 0
    for n in sorted(data.A):
        if not data.tau[(n, n)].equals(AbMap.identity(data.A[n])):
            return False, (n, n, ()), count
    for n in range(1, data.N):
        for k in range(1, n + 1):
            diff = data.tau[(k, n)] - data.tau[(k, n + 1)] @ data.phi[n]
            for x in range(data.A[n].ngens):
                e = [int(i == x) for i in range(data.A[n].ngens)]
                v = diff.apply(e)
                count += 1
                if k == 1:
                    inside = data.A[1].in_relations(v)
                else:
                    inside = preimage_element(data.phi[k - 1], v) is not None
                if not inside:
                    return False, (k, n, tuple(e)), count
    return True, None, count


def _theta(data: DoldData, n: int, quotients: dict):
    C = direct_sum_groups([quotients[k][0] for k in range(1, n + 1)])
    rows = [(quotients[k][1] @ data.tau[(k, n)]).matrix for k in range(1, n + 1)]
    M = vstack(*rows) if rows else IntMatrix.zeros(0, data.A[n].ngens)
    return AbMap(data.A[n], C, M, check=False).reduced()


def dold_splitting(data: DoldData) -> DoldResult:
    ok, witness, count = check_hypothesis(data)
    if not ok:
        k, n, x = witness
        if k == n and not x:
            return DoldResult(False, f"tau_{{{n},{n}}} is not the identity", witness, checked=count)
        return DoldResult(False, f"hypothesis fails for k={k}, n={n}", witness, checked=count)
    quotients = {1: (data.A[1], AbMap.identity(data.A[1]))}
    for k in range(2, data.N + 1):
        quotients[k] = cokernel(data.phi[k - 1])
    thetas = {n: _theta(data, n, quotients) for n in data.A}
    for n, th in thetas.items():
        if not th.is_iso():
            return DoldResult(False, f"theta_{n} is not an isomorphism", None, checked=count)
    rho = {}
    for n in range(1, data.N):
        th1 = thetas[n + 1]
        keep = th1.target.ngens - quotients[n + 1][0].ngens
        proj = AbMap(th1.target, thetas[n].target,
                     IntMatrix([[int(i == j) for j in range(th1.target.ngens)] for i in range(keep)],
                               keep, th1.target.ngens), check=False)
        r = (thetas[n].inverse() @ proj @ th1).reduced()
        if not (r @ data.phi[n]).equals(AbMap.identity(data.A[n])):
            return DoldResult(False, f"rho_{n} o phi_{n} is not the identity", None, rho, count)
        rho[n] = r
    return DoldResult(True, "every phi_n is split injective", None, rho, count)


# ---------------------------------------------------------------------------
# degree-zero data from a coefficient system

def _free_part(C: FgAbGroup, q: AbMap):
    d = C.diagonal
    keep = [i for i, k in enumerate(d) if k == 0]
    F = FgAbGroup.free(len(keep))
    return F, AbMap(q.source, F, q.matrix.submatrix(keep, list(range(q.source.ngens))), check=False)


def coinvariant_data(T: TruncatedFunctor, N: Optional[int] = None, ring: Optional[str] = None) -> DoldData:
    """A_n = H_0(S_n; T_n), phi_n from T(iota_n), tau_{k,n}[x] = sum_{|S|=k} [T(pi_{S,n}) x]."""
    ring = ring or T.ring
    N = T.N if N is None else min(N, T.N)
    kind, _ = parse_ring(ring)
    A, quot, lifts = {}, {}, {}
    for n in range(1, N + 1):
        M = module_over_ring(GModule.from_functor(T, n), ring)
        C, q = M.coinvariants()
        if kind == "Q":
            C, q = _free_part(C, q)
        A[n] = C
        quot[n] = q
        lifts[n] = [preimage_element(q, [int(i == t) for i in range(C.ngens)]) for t in range(C.ngens)]

    def induced(n_src, n_tgt, f_matrix):
        cols = [quot[n_tgt].apply(f_matrix.apply(x)) for x in lifts[n_src]]
        M = IntMatrix.from_columns(cols, A[n_tgt].ngens) if cols else IntMatrix.zeros(A[n_tgt].ngens, 0)
        return AbMap(A[n_src], A[n_tgt], M, check=False).reduced()

    phi = {n: induced(n, n + 1, T.gen(sg.IOTA(n)).matrix) for n in range(1, N)}
    tau = {}
    for n in range(1, N + 1):
        for k in range(1, n + 1):
            total = None
            for S in combinations(range(1, n + 1), k):
                P = T.map(sg.order_preserving_projection(n, S)).matrix
                total = P if total is None else total + P
            tau[(k, n)] = induced(n, k, total)
    return DoldData(A, phi, tau, label=f"H_0 of {T.name or 'T'} over {ring}")


def toy_data(multiplier: int = 2) -> DoldData:
    """A_1 = A_2 = Z, phi_1 = multiplication, every tau the identity."""
    Z = FgAbGroup.free(1)
    one = AbMap.identity(Z)
    phi = {1: AbMap(Z, Z, IntMatrix([[multiplier]], 1, 1))}
    tau = {(1, 1): one, (2, 2): one, (1, 2): one}
    return DoldData({1: Z, 2: Z}, phi, tau, label=f"Z --x{multiplier}--> Z, tau = id")
