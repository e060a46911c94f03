#!/usr/bin/env python3
"""Oscillating-recruitment demo: with mu=1, tau=1/2 and recruitment
-cos(2*pi*t)+1 the forward-Euler population splits into even/odd
sub-sequences with limits 4/3 and 2/3, so N^n never converges to pi/mu."""

import argparse
from pathlib import Path

from ssp_seir.cli import main as cli_main


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=Path("counterexample"))
    args = parser.parse_args()
    return cli_main(["--out", str(args.out), "counterexample"])


if __name__ == "__main__":
    raise SystemExit(main())
