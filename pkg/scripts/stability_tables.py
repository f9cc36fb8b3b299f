"""Twisted homology tables and stabilisation maps for the standard coefficient systems."""

import argparse
from dataclasses import dataclass

from twistcoef.families import from_spec
from twistcoef.homology import stability_report

SYSTEMS = (("const:Z", 5, "Z"), ("partition:1", 5, "Z"), ("partition:1,1", 5, "Z"), ("partition:2", 5, "Z"),
           ("kunneth:circle,q=1,Q", 6, "Q"),
           ("const:Z", 6, "Fp:2"), ("partition:1", 6, "Fp:2"), ("partition:1,1", 6, "Fp:2"), ("partition:2", 6, "Fp:2"))


@dataclass(frozen=True)
class StabilityConfig:
    deg: int = 2
    systems: tuple = SYSTEMS


def main(cfg: StabilityConfig) -> int:
    bad = 0
    for spec, N, ring in cfg.systems:
        rep = stability_report(from_spec(spec, N), D=cfg.deg, ring=ring)
        print("\n".join(rep.lines()))
        print()
        bad += not rep.ok
    return bad


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--deg", type=int, default=StabilityConfig.deg)
    raise SystemExit(main(StabilityConfig(deg=ap.parse_args().deg)))
