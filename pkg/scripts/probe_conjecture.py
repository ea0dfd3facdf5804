#!/usr/bin/env python3
"""Probe the open repeated-block question at levels n = 1, 2, 3.

For each requested n this prints the residual of
8^n * zeta({-2,1}^n) - zeta({3}^n) with its radius, the level's target,
and wall time.  Level 1 is a proven identity and serves as the control;
levels 2 and 3 rest on extrapolated deep-sum tails, so their verdicts
are empirical by construction.
"""

import argparse
import sys
import time

from eulersum import PrecisionContext
from eulersum.runner import CONJECTURE_TARGETS, conjecture_check


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--digits", type=int, default=30,
                    help="target decimal digits for the engines")
    ap.add_argument("--levels", default="1,2,3",
                    help="comma-separated repetition levels from {1,2,3}")
    ap.add_argument("--max-terms", type=int, default=200_000)
    args = ap.parse_args()

    ctx = PrecisionContext(target_digits=args.digits,
                           max_terms=args.max_terms)
    levels = [int(tok) for tok in args.levels.split(",") if tok.strip()]
    worst = 0
    for n in levels:
        if n not in CONJECTURE_TARGETS:
            ap.error(f"level {n} out of range; the cost guard stops at 3")
        started = time.perf_counter()
        out = conjecture_check(n, ctx)
        elapsed = time.perf_counter() - started
        print(f"n={n}: {out.verdict:15s} residual={out.residual:>28s} "
              f"radius={out.radius:>28s} {out.detail} [{elapsed:6.2f}s]")
        if out.verdict != "empirical-pass":
            worst = 1
    return worst


if __name__ == "__main__":
    sys.exit(main())
