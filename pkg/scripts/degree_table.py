"""Degree and height of every functor in the example library, plus the Kunneth degree bounds."""

import argparse
import time
from dataclasses import dataclass

from twistcoef.families import example_library, from_spec
from twistcoef.functor import degree, height


@dataclass(frozen=True)
class DegreeConfig:
    trunc: int = 6
    max_q_circle: int = 3
    max_q_sphere: int = 4


def main(cfg: DegreeConfig) -> None:
    t0 = time.perf_counter()
    print(f"{'functor':<28}{'degree':>8}{'height':>8}")
    for name, T in example_library(cfg.trunc).items():
        print(f"{name:<28}{str(degree(T).value):>8}{str(height(T).value):>8}")
    print("\nKunneth families: degree against floor(q/(h+1))")
    for space, h, top in (("circle", 0, cfg.max_q_circle), ("S2", 1, cfg.max_q_sphere)):
        for q in range(top + 1):
            d = degree(from_spec(f"kunneth:{space},q={q},Z", cfg.trunc))
            print(f"  {space:<7} q={q}  degree {d.value:>3}  bound {q // (h + 1)}")
    print(f"\n{time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trunc", type=int, default=DegreeConfig.trunc)
    main(DegreeConfig(trunc=ap.parse_args().trunc))
