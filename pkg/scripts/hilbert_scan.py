#!/usr/bin/env python3
"""Scan the largest eigenvalue of the finite section H[i][j] = 1/(i+j).

Prints the operator-norm estimate for each N, the deficit from the
limiting value pi, and the deficit shrink per 4x growth in N.  The
approach to pi is logarithmic in N, which this scan makes visible.
"""

import argparse
import math
import sys
import time

from eulersum import hilbert_norm


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="64,256,1024,4096",
                    help="comma-separated matrix sizes")
    args = ap.parse_args()

    sizes = [int(tok) for tok in args.sizes.split(",") if tok.strip()]
    previous_deficit = None
    for n in sizes:
        started = time.perf_counter()
        ball = hilbert_norm(n)
        elapsed = time.perf_counter() - started
        value = float(ball.mid)
        deficit = math.pi - value
        shrink = ("" if previous_deficit is None
                  else f"  shrink/4x={previous_deficit - deficit:+.5f}")
        print(f"N={n:6d}  norm={value:.6f}  pi-norm={deficit:.6f}"
              f"{shrink}  [{elapsed:6.2f}s]")
        previous_deficit = deficit
    return 0


if __name__ == "__main__":
    sys.exit(main())
