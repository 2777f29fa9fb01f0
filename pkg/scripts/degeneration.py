"""Add general points to a small ideal until its initial ideal becomes a power of the maximal ideal."""

import argparse
from dataclasses import dataclass

from nestedhilb.deform import degenerate_to_power, gin, linear_substitution, plane_ring


@dataclass
class Config:
    generators: tuple = ("y - x^2", "x^3")
    target_power: int = 4
    seed: int = 0


def main(cfg: Config) -> None:
    R = plane_ring()
    I = [R.parse(g) for g in cfg.generators]
    print("gin:", gin(I, cfg.seed))
    I = linear_substitution(I, [[1, 2], [3, 5]])
    run = degenerate_to_power(I, cfg.target_power, cfg.seed)
    print("start:", run.start)
    for k, step in enumerate(run.steps, start=1):
        print(f"point {k}: {step.observed} (predicted {'ok' if step.ok else step.predicted})")
    print("reached m^n:", run.ok)


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("generators", nargs="*", default=list(Config.generators))
    ap.add_argument("--power", type=int, default=Config.target_power)
    ap.add_argument("--seed", type=int, default=Config.seed)
    a = ap.parse_args()
    main(Config(tuple(a.generators), a.power, a.seed))
