#!/usr/bin/env python3
"""Sweep random instances and report agreement with the classical scan."""

import argparse

from qnearest import agreement_sweep, sweep_table


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-bits", type=int, default=5)
    parser.add_argument("--max-m", type=int, default=8)
    parser.add_argument("--count", type=int, default=200)
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args()
    rows = agreement_sweep(args.max_bits, args.max_m, args.count, args.seed)
    print(sweep_table(rows), end="")
    worst = min(rows, key=lambda r: r.agree_general)
    print(f"# lowest unique-minimum agreement: {worst.agree_general} at n={worst.n}, m={worst.m}")


if __name__ == "__main__":
    main()
