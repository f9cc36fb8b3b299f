"""The Burau matrices against the presentation: edge values, failing relations, vanishing loci."""

import argparse
from dataclasses import dataclass

from twistcoef.burau import burau_assignment, check_relations, edge_effect_value, specialize


@dataclass(frozen=True)
class BurauConfig:
    max_n: int = 5
    K: int = 8


def main(cfg: BurauConfig) -> None:
    A = burau_assignment(cfg.max_n + 1)
    for k in range(cfg.K + 1):
        ee = edge_effect_value(A, k, 2)
        print(f"k={k}: corner entry {ee.computed.entries()[0]}  closed form {'ok' if ee.matches_closed_form else 'MISMATCH'}")
    rep = check_relations(burau_assignment(cfg.max_n), cfg.K)
    for r in rep.failures():
        print(r.row())
    print("over Z[t, 1/t]:", "all relations hold" if rep.all_hold else f"{len(rep.failures())} failing instances")
    at_one = check_relations(specialize(burau_assignment(cfg.max_n), 1), cfg.K, locus=False)
    print("at t = 1:", "all relations hold" if at_one.all_hold else "failures remain")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=BurauConfig.max_n)
    ap.add_argument("-K", type=int, default=BurauConfig.K)
    a = ap.parse_args()
    main(BurauConfig(a.max_n, a.K))
