#!/usr/bin/env python3
"""Truncation error of the law coefficients and of the nilpotent block versus N."""

import argparse

import numpy as np

from _examples import inverse_two_minus_z, rank_one, rank_two
from schurkernel.colligation import t_gf_matrix
from schurkernel.config import Tolerances
from schurkernel.recurrence import extract_law

# the study measures truncation error, so the kernel test is loosened to let every size through
LOOSE = Tolerances(tol_kernel=1e-2)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", type=int, nargs="+", default=[250, 500, 1000, 2000, 4000, 8000, 16000])
    args = parser.parse_args()

    cases = [
        ("rank-one", rank_one, 1, np.array([1 / 3]), np.zeros((1, 1))),
        ("rank-two", rank_two, 2, np.array([1 / 3, 0]), np.array([[0, 0], [1, 0]])),
        ("inverse-two-minus-z", inverse_two_minus_z, 1, np.array([2 / 3]), None),
    ]
    for name, build, order, law_exact, block_exact in cases:
        print(f"\n{name} (order {order})")
        print(f"{'N':>7}  {'law error':>10}  {'block error':>11}  {'N^2 * law err':>13}")
        for size in args.sizes:
            seq = build(size)
            law_err = np.max(np.abs(extract_law(seq, order, LOOSE).coefficients - law_exact))
            block = t_gf_matrix(seq, order, LOOSE.tol_kernel).matrix
            # no polynomial to compare with for a rational non-polynomial function
            block_err = f"{np.max(np.abs(block - block_exact)):11.3e}" if block_exact is not None else f"{'-':>11}"
            print(f"{size:>7}  {law_err:10.3e}  {block_err}  {law_err * size**2:13.4f}")


if __name__ == "__main__":
    main()
