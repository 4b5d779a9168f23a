#!/usr/bin/env python3
"""Smallest singular value of the leading triangular blocks against the tail-product bound."""

import argparse

import numpy as np

from _examples import FAMILIES
from schurkernel.classify import helson_szego


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--size", type=int, default=2000)
    parser.add_argument("--depth", type=int, default=30)
    parser.add_argument("--every", type=int, default=5)
    args = parser.parse_args()

    for name in ("geometric-0.5", "rank-one", "inverse-two-minus-z", "slow-decay"):
        report = helson_szego(FAMILIES[name](args.size), args.depth)
        print(f"\n{name}: verdict {report.verdict.value}, strong Szego sum {report.strong_szego_sum:.4g}")
        print(f"{'n':>4}  {'sigma_min':>10}  {'bound':>10}  {'top eig':>8}")
        for n in range(0, args.depth, args.every):
            print(
                f"{n + 1:>4}  {report.sigma_min_profile[n]:10.4e}  {report.lower_bounds[n]:10.4e}  "
                f"{report.top_eigenvalues[n]:8.4f}"
            )
        profile = np.array(report.sigma_min_profile)
        print(f"  last-window drift {profile[-6] - profile[-1]:.3e}")


if __name__ == "__main__":
    main()
