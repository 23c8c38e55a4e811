#!/usr/bin/env python3
"""Show how the selection probability decays with distance to the reference.

For a fixed bit width the branch weight is cos^2(pi * d / 2^(n+1)), so the
two-element head-to-head probability and the generalized post-selected
share both fall off monotonically as the distance d grows.
"""

import argparse

from qnearest import closed_form_generalized, closed_form_paper


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--bits", type=int, default=4)
    args = parser.parse_args()
    n = args.bits
    span = 1 << n
    b = 0  # distances realized as elements above the reference

    print(f"bit width n = {n}; branch weight = single-element keep probability")
    print("distance,weight,p_beats_exact_match")
    for d in range(span):
        weight = closed_form_generalized((d,), b, n).postselect_probability
        # head to head against an exact match in the two-element scheme
        versus = closed_form_paper((b, d), b, n).probabilities[1]
        print(f"{d},{weight:.6f},{versus:.6f}")

    spread = tuple(range(span))
    probs = closed_form_generalized(spread, b, n).probabilities
    print("\nall distances at once, post-selected share per index:")
    print(",".join(f"{p:.4f}" for p in probs))


if __name__ == "__main__":
    main()
