"""Split injectivity in degree zero from transfer maps, with a failing two-term control."""

import argparse
from dataclasses import dataclass

from twistcoef.families import from_spec
from twistcoef.homology import coinvariant_data, dold_splitting, toy_data


@dataclass(frozen=True)
class DoldConfig:
    trunc: int = 5
    systems: tuple = ("partition:1", "partition:1,1", "partition:2", "const:Z")


def main(cfg: DoldConfig) -> None:
    for spec in cfg.systems:
        data = coinvariant_data(from_spec(spec, cfg.trunc))
        print(data.label)
        print("\n".join("  " + l for l in dold_splitting(data).lines()))
    data = toy_data(2)
    print(data.label)
    print("\n".join("  " + l for l in dold_splitting(data).lines()))


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trunc", type=int, default=DoldConfig.trunc)
    main(DoldConfig(trunc=ap.parse_args().trunc))
