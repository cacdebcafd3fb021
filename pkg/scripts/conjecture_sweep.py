"""G at (0, -f, f, ..., -f, f) for a range of k, with both substitution routes where feasible.

    python scripts/conjecture_sweep.py --kmax 6 --degree 12
"""

import argparse
import time

from geode.solver import MULTIVARIATE_LIMIT, window_size, conjecture_coefficients, evaluate_geode_at_zero_sum


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--kmax", type=int, default=6)
    ap.add_argument("--degree", type=int, default=12)
    args = ap.parse_args()

    for k in range(args.kmax + 1):
        c = conjecture_coefficients(k)
        t0 = time.perf_counter()
        ev = evaluate_geode_at_zero_sum(c, args.degree, route="image")
        dt = time.perf_counter() - t0
        line = f"k={k}  m={len(c):<3} {ev.terms()[:8]}...  closed form: {ev.agrees}  image {dt:.4f}s"
        if window_size(len(c), args.degree) <= MULTIVARIATE_LIMIT:
            t0 = time.perf_counter()
            full = evaluate_geode_at_zero_sum(c, args.degree, route="series")
            line += f"  series {time.perf_counter() - t0:.2f}s same={full.G == ev.G}"
        print(line)


if __name__ == "__main__":
    main()
