"""Compare the fiber oracle with the rank-condition oracle on random and Jordan-type samples."""

import argparse
import time
from dataclasses import dataclass

from nestedhilb.exactpoly import GF
from nestedhilb.nestcore import jordan_sweep_f2, jordan_sweep_generic, oracle_sweep


@dataclass
class Config:
    sizes: tuple = (4, 5)
    samples: int = 1000
    seed: int = 0
    prime: int = 32003


def main(cfg: Config) -> None:
    F = GF(cfg.prime)
    for n in cfg.sizes:
        start = time.perf_counter()
        s = oracle_sweep(n, cfg.samples, cfg.seed, F)
        print(f"n={n}: {s.samples} samples, {s.true_count} in the fiber, {len(s.mismatches)} mismatches "
              f"({time.perf_counter() - start:.2f} s)")
    for name, sweep in (("F_2 Jordan types", jordan_sweep_f2(4)), ("generic Jordan types", jordan_sweep_generic(4, F))):
        print(f"n=4 {name}: {sweep.samples} samples, {len(sweep.mismatches)} mismatches")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+", default=list(Config.sizes))
    ap.add_argument("--samples", type=int, default=Config.samples)
    ap.add_argument("--seed", type=int, default=Config.seed)
    ap.add_argument("--prime", type=int, default=Config.prime)
    a = ap.parse_args()
    main(Config(tuple(a.sizes), a.samples, a.seed, a.prime))
