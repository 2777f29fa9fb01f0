"""Print the cohomology table of the exterior powers for each n, with cancelling pairs marked."""

import argparse
from dataclasses import dataclass

from nestedhilb.bottklw import cohomology_tables, degree_formula, expected_table, klw_degree


@dataclass
class Config:
    n_min: int = 4
    n_max: int = 8


def show(n: int) -> None:
    table = cohomology_tables(n)
    certified, tagged = table.certified(), table.tagged()
    print(f"n = {n}: degree {klw_degree(n, table)} (closed form {degree_formula(n)}), "
          f"matches hand table: {certified == expected_table(n)}")
    for pq in sorted(set(certified) | tagged):
        e = table.entries[pq]
        mark = f"  cancelling up to {e.cancelling}" if pq in tagged else ""
        print(f"   h^{pq[1]}(wedge^{pq[0]}) = {e.certified}{mark}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-min", type=int, default=Config.n_min)
    ap.add_argument("--n-max", type=int, default=Config.n_max)
    a = ap.parse_args()
    cfg = Config(a.n_min, a.n_max)
    for n in range(cfg.n_min, cfg.n_max + 1):
        show(n)
