"""Each decomposition layer three ways: resolution over S_n, over the Young subgroup, bar complex."""

import argparse
from dataclasses import dataclass

from twistcoef.families import from_spec
from twistcoef.homology import shapiro_reduce


@dataclass(frozen=True)
class ShapiroConfig:
    trunc: int = 4
    deg: int = 2
    systems: tuple = ("partition:1", "partition:1,1", "partition:2", "partition:2,1", "const:Z",
                      "kunneth:circle,q=2,Q")


def main(cfg: ShapiroConfig) -> int:
    cells = bar = bad = 0
    for spec in cfg.systems:
        T = from_spec(spec, cfg.trunc)
        print(f"{spec} over {T.ring}")
        for n in range(1, cfg.trunc + 1):
            for k in range(n + 1):
                cert = shapiro_reduce(T, n, k, cfg.deg)
                for c in cert.cells:
                    print("  " + c.record())
                cells += len(cert.cells)
                bar += cert.bar_cells
                bad += sum(not c.agree for c in cert.cells)
    print(f"{cells} cells, {bar} checked against the bar complex, {bad} disagreements")
    return 1 if bad else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trunc", type=int, default=ShapiroConfig.trunc)
    ap.add_argument("--deg", type=int, default=ShapiroConfig.deg)
    a = ap.parse_args()
    raise SystemExit(main(ShapiroConfig(a.trunc, a.deg)))
