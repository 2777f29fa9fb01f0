"""Tabulate c-facet counts, last columns and K multiplicities against the closed form."""

import argparse
import time
from dataclasses import dataclass

from nestedhilb.groebner import hilbert_of_monomials
from nestedhilb.nestcore import build_setup
from nestedhilb.srcomplex import facet_count_formula, verify_counts


@dataclass
class Config:
    n_min: int = 2
    n_max: int = 8
    multiplicity: bool = True


def main(cfg: Config) -> None:
    print(f"{'n':>3} {'facets':>8} {'formula':>8} {'last':>6} {'mult(K)':>8} {'sec':>6}")
    for n in range(cfg.n_min, cfg.n_max + 1):
        start = time.perf_counter()
        rep = verify_counts(n)
        mult = "-"
        if cfg.multiplicity:
            s = build_setup(n)
            mult = hilbert_of_monomials(list(s.k_monomials().values()), s.ring_A.nvars).multiplicity
        print(f"{n:>3} {rep['total']:>8} {facet_count_formula(n):>8} {rep['last_column']:>6} {mult!s:>8} "
              f"{time.perf_counter() - start:>6.2f}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-min", type=int, default=Config.n_min)
    ap.add_argument("--n-max", type=int, default=Config.n_max)
    ap.add_argument("--no-multiplicity", action="store_true")
    a = ap.parse_args()
    main(Config(a.n_min, a.n_max, not a.no_multiplicity))
