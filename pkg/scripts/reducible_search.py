"""Smallest r at which the Grassmannian count exceeds r^2, for a range of d."""

import argparse
from dataclasses import dataclass

from nestedhilb.deform import reducible_search


@dataclass
class Config:
    d_min: int = 5
    d_max: int = 12


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--d-min", type=int, default=Config.d_min)
    ap.add_argument("--d-max", type=int, default=Config.d_max)
    a = ap.parse_args()
    for d in range(a.d_min, a.d_max + 1):
        w = reducible_search(d)
        print(f"d={d}: r={w.r}, dim={w.dim_grassmannians} > {w.bound}, lambda={w.partition}")
