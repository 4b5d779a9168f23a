#!/usr/bin/env python3
"""Write the sample CLI input documents used in the README."""

import argparse
import json
from pathlib import Path

from _examples import geometric, rank_one


def pairs(seq):
    return [[float(g.real), float(g.imag)] for g in seq.params]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=Path(__file__).resolve().parent.parent / "sample_inputs")
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    docs = {
        "taylor.json": {"taylor_coefficients": [[0.5, 0], [0.5, 0], [0, 0], [0, 0]]},
        "prefix.json": {"schur_parameters": [[0.5, 0], [2 / 3, 0]]},
        "lambda.json": {"coefficients": [[1 / 3, 0]]},
        "blaschke.json": {"schur_parameters": [[0, 0], [0.5, 0], [0, 1]], "status": "terminated"},
        "rank_one.json": {
            "schur_parameters": pairs(rank_one(2000)),
            "options": {"tolerances": {"tol_sigma": 5e-3, "tol_nilp": 1e-6}, "depths": {"n_max": 8}},
        },
        "geometric.json": {"schur_parameters": pairs(geometric(0.5, 200))},
    }
    for name, doc in docs.items():
        (args.out / name).write_text(json.dumps(doc) + "\n")
        print(args.out / name)


if __name__ == "__main__":
    main()
