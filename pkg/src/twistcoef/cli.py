"""Command-line front end.

    twistcoef validate FUNCTOR
    twistcoef invariants FUNCTOR
    twistcoef decompose FUNCTOR
    twistcoef stability FUNCTOR [--degree-bound K]
    twistcoef shapiro FUNCTOR
    twistcoef burau [--max-n 5] [-K 8] [--t0 1]
    twistcoef dold-demo [FUNCTOR | --toy]
    twistcoef export FUNCTOR [-o PATH]

FUNCTOR is a functor file or a family spec such as ``partition:2,1``.
Exit codes: 0 success, 1 mathematical failure, 2 usage or parse error,
3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field
from typing import Optional

from . import functor_io
from .burau import burau_assignment, check_relations, specialize
from .families import SPEC_FORMS, FamilyError, from_spec
from .functor import TruncatedFunctor, decompose, degree, height, verify_lemma_suite
from .functor_io import FunctorParseError
from .linalg import parse_ring

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class Config:
    trunc: int = 6  # truncation N for family specs
    deg: int = 2  # homology degree cap D
    ring: Optional[str] = None  # None: the functor's own ring
    bound: int = 5  # exhaustive-check bound (largest n)
    format: str = "text"  # text | records
    seed: int = 0  # seed for sampled checks

    def __post_init__(self):
        for name in ("trunc", "deg", "bound"):
            if getattr(self, name) < 1:
                raise UsageError(f"--{name} must be positive")
        if self.format not in ("text", "records"):
            raise UsageError("--format must be text or records")
        if self.ring is not None:
            try:
                parse_ring(self.ring)
            except ValueError as e:
                raise UsageError(str(e)) from None


@dataclass
class Output:
    text: list = field(default_factory=list)
    records: list = field(default_factory=list)
    code: int = EXIT_OK

    def emit(self, fmt: str) -> str:
        lines = self.text if fmt == "text" else self.records
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# helpers

def load_functor(spec: str, cfg: Config) -> TruncatedFunctor:
    """A functor file path, or a ``family:params`` string."""
    if os.path.exists(spec):
        T = functor_io.load(spec)
        return T.truncate(cfg.trunc) if cfg.trunc < T.N else T
    try:
        return from_spec(spec, cfg.trunc)
    except FamilyError as e:
        raise UsageError(f"{spec!r} is neither a file nor a family spec: {e}") from None


def homology_ring(T: TruncatedFunctor, cfg: Config) -> str:
    ring = cfg.ring or T.ring
    tk, tp = parse_ring(T.ring)
    rk, rp = parse_ring(ring)
    if tk != "Z" and (tk, tp) != (rk, rp):
        raise UsageError(f"{T.name} is defined over {T.ring}; homology must be taken over {T.ring}")
    return ring


def describe(G, ring: str) -> str:
    """Group description over the ring; lattices of a Q-functor read as Q-vector spaces."""
    kind, _ = parse_ring(ring)
    if kind == "Q":
        r = G.rank
        return "0" if r == 0 else ("Q" if r == 1 else f"Q^{r}")
    return G.describe()


def _rec(**kw) -> str:
    return " ".join(f"{k}={v}" for k, v in kw.items())


def _header(T: TruncatedFunctor) -> str:
    return f"functor {T.name or 'T'} (trunc {T.N}, ring {T.ring})"


# ---------------------------------------------------------------------------
# commands

def cmd_validate(T: TruncatedFunctor, cfg: Config) -> Output:
    out = Output()
    rep = T.check_functoriality(bound=cfg.bound, seed=cfg.seed)
    out.text += [_header(T), "groups: " + ", ".join(f"T_{n} = {describe(G, T.ring)}" for n, G in enumerate(T.groups)),
                 f"functoriality checks: {rep.checked}",
                 f"result: {'PASS' if rep.ok else 'FAIL'} ({rep.message})"]
    if not rep.ok:
        out.text.append("witness: " + " , ".join(rep.witness))
        out.code = EXIT_FAIL
    out.records.append(_rec(check="functoriality", name=T.name, checked=rep.checked,
                            status="pass" if rep.ok else "fail",
                            witness="|".join(rep.witness).replace(" ", "") or "-"))
    return out


def cmd_invariants(T: TruncatedFunctor, cfg: Config) -> Output:
    out = Output()
    d, h = degree(T), height(T)
    out.text += [_header(T), f"degree: {d}", f"height: {h}"]
    bad = d.determinate and h.determinate and h.value > d.value
    out.text.append("height <= degree: " + ("VIOLATED" if bad else
                                            ("yes" if d.determinate and h.determinate else "not decidable")))
    out.records.append(_rec(invariant="degree", value=d.value, status=d.status))
    out.records.append(_rec(invariant="height", value=h.value, status=h.status))
    out.text.append("ranks of T_n^k = T_n[{n-k+1..n}^delta]:")
    top = min(T.N, cfg.bound)
    out.text.append("  n       T_n  " + " ".join(f"k={k}".rjust(5) for k in range(top + 1)))
    for n in range(top + 1):
        pieces = [describe(T.top_piece(n, k).group, T.ring) for k in range(n + 1)]
        whole = describe(T.groups[n], T.ring)
        out.text.append(f"{n:>3}  {whole:>8}  " + " ".join(p.rjust(5) for p in pieces))
        for k, p in enumerate(pieces):
            out.records.append(_rec(n=n, k=k, piece=p.replace(" ", ""), total=whole.replace(" ", "")))
    if bad:
        out.code = EXIT_FAIL
    return out


def cmd_decompose(T: TruncatedFunctor, cfg: Config) -> Output:
    out = Output([_header(T)])
    top = min(T.N, cfg.bound, 4)
    for n in range(top + 1):
        rep = decompose(T, n)
        ranks = {}
        for Q, ce in rep.summands.items():
            ranks[len(Q)] = ranks.get(len(Q), 0) + ce.group.rank
        out.text.append(f"n={n}: T_{n} = {describe(T.groups[n], T.ring)}, summand ranks by |Q|: "
                        + ", ".join(f"{k}:{r}" for k, r in sorted(ranks.items()))
                        + f"  {'ok' if rep.ok else 'FAIL'}")
        out.text += [f"  {f}" for f in rep.failures]
        out.records.append(_rec(n=n, rank=T.groups[n].rank, summands=rep.rank_total(),
                                status="ok" if rep.ok else "fail"))
        if not rep.ok:
            out.code = EXIT_FAIL
    lem = verify_lemma_suite(T, bound=top, bijection_bound=min(T.N, cfg.bound))
    for name, count in sorted(lem.checks.items()):
        out.text.append(f"{name}: {count} cases")
        out.records.append(_rec(check=name, cases=count))
    out.text += [f"  {f}" for f in lem.failures]
    out.text.append(f"result: {'PASS' if out.code == EXIT_OK and lem.ok else 'FAIL'}")
    if not lem.ok:
        out.code = EXIT_FAIL
    return out


def cmd_stability(T: TruncatedFunctor, cfg: Config, degree_bound: Optional[int] = None) -> Output:
    from .homology import stability_report
    ring = homology_ring(T, cfg)
    rep = stability_report(T, D=cfg.deg, ring=ring, n_max=min(T.N, cfg.bound), degree_bound=degree_bound)
    out = Output(rep.lines(), rep.records())
    if not rep.ok:
        out.code = EXIT_FAIL
    return out


def cmd_shapiro(T: TruncatedFunctor, cfg: Config) -> Output:
    from .homology import shapiro_reduce
    ring = homology_ring(T, cfg)
    out = Output([_header(T), f"H_*(S_n; W_k) against H_*(S_(n-k) x S_k; T_n^k) over {ring}, d <= {cfg.deg}"])
    bad = 0
    for n in range(1, min(T.N, cfg.bound) + 1):
        for k in range(n + 1):
            cert = shapiro_reduce(T, n, k, cfg.deg, ring)
            for c in cert.cells:
                out.text.append("  " + c.record())
                out.records.append(c.record())
            if not cert.ok:
                bad += 1
    out.text.append(f"result: {'PASS' if not bad else 'FAIL'} ({bad} disagreeing certificates)")
    if bad:
        out.code = EXIT_FAIL
    return out


def cmd_burau(max_n: int, K: int, t0: Optional[str] = None) -> Output:
    if max_n < 2:
        raise UsageError("--max-n must be at least 2")
    A = burau_assignment(max_n)
    if t0 is not None:
        try:
            A = specialize(A, t0)
        except (ValueError, ZeroDivisionError) as e:
            raise UsageError(f"bad --t0: {e}") from None
    rep = check_relations(A, K, locus=t0 is None)
    out = Output([f"relations of the {rep.label} assignment, n <= {max_n}, k <= {K}"])
    out.text += rep.lines()
    for rel, (h, f) in sorted(rep.by_relation().items()):
        out.text.append(f"relation ({rel}): {h} hold, {f} fail")
    first = rep.failures()
    if first:
        out.text.append(f"first failure: ({first[0].rel}) {first[0].params}")
    out.text.append("all relations hold" if rep.all_hold else "presentation NOT satisfied")
    out.records = [_rec(rel=r.rel, params=r.params.replace(" ", ","), holds="yes" if r.holds else "no")
                   for r in rep.instances]
    return out


def cmd_dold_demo(T: Optional[TruncatedFunctor], cfg: Config, toy: bool = False) -> Output:
    from .homology import coinvariant_data, dold_splitting, toy_data
    if toy:
        data = toy_data(2)
    else:
        ring = homology_ring(T, cfg)
        data = coinvariant_data(T, min(T.N, cfg.bound), ring)
    res = dold_splitting(data)
    out = Output([f"split injectivity data: {data.label}"])
    for n in sorted(data.A):
        out.text.append(f"A_{n} = {data.A[n].describe()}")
    for n in sorted(data.phi):
        out.text.append(f"phi_{n} matrix {data.phi[n].matrix.data}")
    out.text += res.lines()
    out.records.append(_rec(check="dold", status="pass" if res.ok else "fail", checked=res.checked,
                            witness="-" if not res.witness else f"k={res.witness[0]},n={res.witness[1]}"))
    for n in sorted(res.rho):
        out.records.append(_rec(rho=n, matrix=str(res.rho[n].matrix.data).replace(" ", "")))
    if not res.ok:
        out.code = EXIT_FAIL
    return out


def cmd_export(T: TruncatedFunctor) -> str:
    return functor_io.dumps(T)


# ---------------------------------------------------------------------------
# argument parsing

def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    d = Config()
    p.add_argument("--ring", default=d.ring, help="Z, Q or Fp:<p> (default: the functor's ring)")
    p.add_argument("--trunc", type=int, default=d.trunc, help="truncation N for family specs")
    p.add_argument("--deg", type=int, default=d.deg, help="homology degree cap D")
    p.add_argument("--bound", type=int, default=d.bound, help="largest n for exhaustive checks")
    p.add_argument("--seed", type=int, default=d.seed, help="seed for sampled checks")
    p.add_argument("--format", choices=("text", "records"), default=d.format)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="twistcoef", description="Twisted coefficient systems and homological stability.",
        epilog="functor specs: " + "; ".join(SPEC_FORMS))
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in (("validate", "check functoriality"),
                           ("invariants", "degree, height and layer ranks"),
                           ("decompose", "cross-effect decomposition and its lemma suite"),
                           ("stability", "stabilisation maps in twisted homology"),
                           ("shapiro", "Shapiro reduction of each decomposition layer")):
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("functor", help="functor file or family spec")
        if name == "stability":
            sp.add_argument("--degree-bound", type=int, default=None,
                            help="use this degree when the computed one is not determinate")
    sp = sub.add_parser("burau", parents=[common], help="check the Burau assignment against the presentation")
    sp.add_argument("--max-n", type=int, default=5)
    sp.add_argument("-K", type=int, default=8, help="largest power of sigma_1 in the edge relation")
    sp.add_argument("--t0", default=None, help="specialise t to this rational number")
    sp = sub.add_parser("dold-demo", parents=[common], help="split injectivity from transfer maps in degree 0")
    sp.add_argument("functor", nargs="?", default="partition:1")
    sp.add_argument("--toy", action="store_true", help="use the two-term example Z --x2--> Z instead")
    sp = sub.add_parser("export", parents=[common], help="write a functor file")
    sp.add_argument("functor")
    sp.add_argument("-o", "--output", default=None)
    return parser


def run(argv: Optional[list] = None) -> tuple[int, str, str]:
    """(exit code, stdout, stderr) without touching the real streams."""
    from .homology import CapExceeded, NotEquivariant
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return (EXIT_USAGE if e.code else EXIT_OK), "", ""
    try:
        cfg = Config(args.trunc, args.deg, args.ring, args.bound, args.format, args.seed)
        cmd = args.command
        if cmd == "burau":
            out = cmd_burau(args.max_n, args.K, args.t0)
        elif cmd == "dold-demo":
            T = None if args.toy else load_functor(args.functor, cfg)
            out = cmd_dold_demo(T, cfg, args.toy)
        else:
            T = load_functor(args.functor, cfg)
            if cmd == "export":
                text = cmd_export(T)
                if args.output:
                    with open(args.output, "w") as fh:
                        fh.write(text)
                    return EXIT_OK, "", ""
                return EXIT_OK, text, ""
            if cmd == "validate":
                out = cmd_validate(T, cfg)
            elif cmd == "invariants":
                out = cmd_invariants(T, cfg)
            elif cmd == "decompose":
                out = cmd_decompose(T, cfg)
            elif cmd == "stability":
                out = cmd_stability(T, cfg, args.degree_bound)
            else:
                out = cmd_shapiro(T, cfg)
        return out.code, out.emit(cfg.format), ""
    except FunctorParseError as e:
        return EXIT_USAGE, "", f"parse error: {e}\n"
    except UsageError as e:
        return EXIT_USAGE, "", f"error: {e}\n"
    except CapExceeded as e:
        return EXIT_CAP, "", f"cap exceeded: {e}\n"
    except NotEquivariant as e:
        return EXIT_FAIL, "", f"not equivariant: {e}\n"


def main(argv: Optional[list] = None) -> int:
    code, out, err = run(argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
