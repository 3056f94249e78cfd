#!/usr/bin/env python3
"""Sweep truncation degree and basis parameter; emit convergence/condition CSV.

Reproduces the convergence-floor and condition-number trend data: for each
n in a doubling ladder and each alpha on a uniform grid, solve the chosen
example and record the maximum absolute error over its reporting lattice,
the endpoint error, and (for linear problems) the infinity-norm condition
number:

    python3 scripts/condition_sweep.py --example 1 --csv sweep.csv
"""
import argparse
import sys

from laneps.cli import main as cli_main


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--example", type=int, default=1, choices=range(1, 6))
    parser.add_argument("--n", default="4,8,16,32,64,128",
                        help="comma-separated truncation degrees")
    parser.add_argument("--alpha-range", default="-0.4:0.1:2",
                        help="start:step:stop basis-parameter grid")
    parser.add_argument("--csv", required=True, help="output path")
    args = parser.parse_args(argv)

    return cli_main([
        "sweep", str(args.example),
        "--n", args.n,
        "--alpha-range", args.alpha_range,
        "--csv", args.csv,
    ])


if __name__ == "__main__":
    sys.exit(main())
