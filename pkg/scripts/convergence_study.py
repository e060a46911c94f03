#!/usr/bin/env python3
"""Order study: max-norm error against the fine fourth-order reference for
step sizes tau_t * 2^-k, with fitted slopes per method."""

import argparse
from pathlib import Path

from ssp_seir.cli import main as cli_main


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=Path("convergence"))
    parser.add_argument("--pi", default="choiceA")
    parser.add_argument("--config", type=Path, default=None)
    args = parser.parse_args()

    argv = ["--out", str(args.out), "convergence", "--pi", args.pi]
    if args.config is not None:
        argv = ["--config", str(args.config)] + argv
    return cli_main(argv)


if __name__ == "__main__":
    raise SystemExit(main())
