#!/usr/bin/env python3
"""Gram determinant profiles and the rank verdict as the truncation grows.

Shows why the default tol_sigma only separates a vanishing determinant
from roundoff once N is large: the truncation error in sigma_{r+1} decays
roughly like 1/N^2.
"""

import argparse

from _examples import FAMILIES
from schurkernel.classify import rank_of
from schurkernel.kernel import gram_profile


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--family", choices=sorted(FAMILIES), action="append")
    parser.add_argument("--depth", type=int, default=5)
    parser.add_argument("--sizes", type=int, nargs="+", default=[500, 2000, 8000, 20000])
    parser.add_argument("--tol-sigma", type=float, default=1e-8)
    args = parser.parse_args()

    for name in args.family or ["rank-one", "rank-two", "geometric-0.5", "slow-decay"]:
        print(f"\n{name}")
        print(f"{'N':>7}  " + "  ".join(f"sigma_{k:<5d}" for k in range(1, args.depth + 1)) + "  rank")
        for size in args.sizes:
            seq = FAMILIES[name](size)
            dets = gram_profile(seq, args.depth)
            rank = rank_of(seq, args.depth, args.tol_sigma)
            print(f"{size:>7}  " + "  ".join(f"{d:11.3e}" for d in dets[1:]) + f"  {rank}")


if __name__ == "__main__":
    main()
