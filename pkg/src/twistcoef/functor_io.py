"""Plain-text functor files.

Layout::

    sigma-functor v1
    name P(1)                  # optional
    family partition:1         # optional, informative
    trunc 2
    ring Z
    object 0 torsion free 0
    object 1 torsion free 1
    object 2 torsion 2 free 1  # Z/2 + Z, torsion generators first
    map iota 0 : 1x0
    map iota 1 : 2x1
    0
    1
    map pi 1 : 0x1
    ...
    map sigma 1 2 : 2x2
    0 1
    1 0
    end

A matrix header ``RxC`` is followed by R rows of C integers (no rows when
C = 0).  Blank lines and ``#`` comments are ignored.  Writing a parsed file
reproduces it byte for byte when it was produced by ``dumps``.
"""

from __future__ import annotations

from .functor import TruncatedFunctor
from .linalg import AbMap, FgAbGroup, IntMatrix, parse_ring
from . import sigma as sg

HEADER = "sigma-functor v1"


class FunctorParseError(ValueError):
    def __init__(self, message: str, line: int, col: int = 1):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col
        self.message = message


def _torsion_first(G: FgAbGroup):
    d = G.diagonal
    order = [i for i, k in enumerate(d) if k] + [i for i, k in enumerate(d) if not k]
    return order


def dumps(T: TruncatedFunctor, family: str | None = None) -> str:
    family = family or getattr(T, "family", None)
    perms = [_torsion_first(G) for G in T.groups]
    lines = [HEADER]
    if T.name:
        lines.append(f"name {T.name}")
    if family:
        lines.append(f"family {family}")
    lines.append(f"trunc {T.N}")
    lines.append(f"ring {T.ring}")
    for n, G in enumerate(T.groups):
        d = [G.diagonal[i] for i in perms[n]]
        tors = [k for k in d if k]
        free = len(d) - len(tors)
        lines.append(f"object {n} torsion{''.join(' ' + str(k) for k in tors)} free {free}")
    for a in sg.all_atoms(T.N):
        M = T.gen(a).reduced().matrix
        M = M.submatrix(perms[a.target], perms[a.source])
        if a.kind == "sigma":
            head = f"map sigma {a.i} {a.n}"
        else:
            head = f"map {a.kind} {a.n}"
        lines.append(f"{head} : {M.rows}x{M.cols}")
        if M.cols:
            for r in M.data:
                lines.append(" ".join(str(x) for x in r))
    lines.append("end")
    return "\n".join(lines) + "\n"


def dump(T: TruncatedFunctor, path, family: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(T, family))


def _tokens(text):
    for ln, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if body.strip():
            yield ln, raw, body


def _int(tok, ln, raw):
    try:
        return int(tok)
    except ValueError:
        col = raw.find(tok) + 1 if tok in raw else 1
        raise FunctorParseError(f"expected an integer, got {tok!r}", ln, col) from None


def loads(text: str) -> TruncatedFunctor:
    lines = list(_tokens(text))
    if not lines:
        raise FunctorParseError("empty file", 1)
    pos = 0

    def nxt():
        nonlocal pos
        if pos >= len(lines):
            last = lines[-1][0] if lines else 1
            raise FunctorParseError("unexpected end of file", last + 1)
        item = lines[pos]
        pos += 1
        return item

    ln, raw, body = nxt()
    if body.strip() != HEADER:
        raise FunctorParseError(f"expected header {HEADER!r}", ln, 1)
    name, family, N, ring = "", None, None, None
    groups: dict = {}
    gens: dict = {}
    ended = False
    while pos < len(lines):
        ln, raw, body = nxt()
        parts = body.split()
        key = parts[0]
        if key == "end":
            ended = True
            break
        if key == "name":
            name = body.strip()[len("name"):].strip()
        elif key == "family":
            family = body.strip()[len("family"):].strip()
        elif key == "trunc":
            if len(parts) != 2:
                raise FunctorParseError("trunc takes one integer", ln, 1)
            N = _int(parts[1], ln, raw)
            if N < 0:
                raise FunctorParseError("truncation must be >= 0", ln, raw.find(parts[1]) + 1)
        elif key == "ring":
            if len(parts) != 2:
                raise FunctorParseError("ring takes one tag", ln, 1)
            try:
                kind, p = parse_ring(parts[1])
            except ValueError as e:
                raise FunctorParseError(str(e), ln, raw.find(parts[1]) + 1) from None
            ring = f"Fp:{p}" if kind == "Fp" else kind
        elif key == "object":
            if len(parts) < 5 or parts[2] != "torsion" or "free" not in parts:
                raise FunctorParseError("expected 'object <n> torsion <a b ...> free <r>'", ln, 1)
            n = _int(parts[1], ln, raw)
            fi = parts.index("free")
            tors = [_int(t, ln, raw) for t in parts[3:fi]]
            if len(parts) != fi + 2:
                raise FunctorParseError("free takes one integer", ln, 1)
            free = _int(parts[fi + 1], ln, raw)
            if any(t < 1 for t in tors) or free < 0:
                raise FunctorParseError("torsion orders must be >= 1 and free rank >= 0", ln, 1)
            if n in groups:
                raise FunctorParseError(f"object {n} given twice", ln, 1)
            groups[n] = FgAbGroup.from_invariants(tors + [0] * free)
        elif key == "map":
            if N is None:
                raise FunctorParseError("'trunc' must come before maps", ln, 1)
            if ":" not in body:
                raise FunctorParseError("map header needs ': RxC'", ln, 1)
            left, right = body.split(":", 1)
            lp = left.split()
            try:
                if lp[1] == "sigma" and len(lp) == 4:
                    atom = sg.SIGMA(_int(lp[2], ln, raw), _int(lp[3], ln, raw))
                elif lp[1] in ("iota", "pi") and len(lp) == 3:
                    atom = sg.Atom(lp[1], _int(lp[2], ln, raw))
                else:
                    raise IndexError
            except IndexError:
                raise FunctorParseError("expected 'map iota n', 'map pi n' or 'map sigma i n'", ln, 1) from None
            if atom not in set(sg.all_atoms(N)):
                raise FunctorParseError(f"generator {atom} is not in the truncation 0..{N}", ln, 1)
            shape = right.strip().split("x")
            if len(shape) != 2:
                raise FunctorParseError("matrix shape must look like RxC", ln, raw.find(":") + 2)
            R, C = _int(shape[0], ln, raw), _int(shape[1], ln, raw)
            rows = []
            if C:
                for _ in range(R):
                    rln, rraw, rbody = nxt()
                    vals = [_int(t, rln, rraw) for t in rbody.split()]
                    if len(vals) != C:
                        raise FunctorParseError(f"expected {C} entries, got {len(vals)}", rln, 1)
                    rows.append(vals)
            else:
                rows = [[] for _ in range(R)]
            if atom in gens:
                raise FunctorParseError(f"generator {atom} given twice", ln, 1)
            gens[atom] = (ln, IntMatrix(rows, R, C))
        else:
            raise FunctorParseError(f"unknown keyword {key!r}", ln, raw.find(key) + 1)
    if not ended:
        raise FunctorParseError("missing 'end'", lines[-1][0] + 1)
    if pos < len(lines):
        raise FunctorParseError("content after 'end'", lines[pos][0], 1)
    if N is None or ring is None:
        raise FunctorParseError("file needs 'trunc' and 'ring'", lines[-1][0])
    for n in range(N + 1):
        if n not in groups:
            raise FunctorParseError(f"object {n} missing", lines[-1][0])
    extra = [n for n in groups if n > N]
    if extra:
        raise FunctorParseError(f"object {extra[0]} beyond truncation {N}", lines[-1][0])
    glist = [groups[n] for n in range(N + 1)]
    amap = {}
    for a in sg.all_atoms(N):
        if a not in gens:
            raise FunctorParseError(f"missing map for generator {a}", lines[-1][0])
        gln, M = gens[a]
        src, tgt = glist[a.source], glist[a.target]
        if M.shape != (tgt.ngens, src.ngens):
            raise FunctorParseError(f"{a} needs a {tgt.ngens}x{src.ngens} matrix, got {M.rows}x{M.cols}", gln)
        amap[a] = AbMap(src, tgt, M, check=False)
    T = TruncatedFunctor(N, glist, amap, ring=ring, name=name)
    T.family = family
    return T


def load(path) -> TruncatedFunctor:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())
