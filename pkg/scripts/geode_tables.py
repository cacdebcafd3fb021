"""Print S, G, H coefficient tables for one window and check them against enumeration.

    python scripts/geode_tables.py --m 3 --degree 4
"""

import argparse
import time

from geode.paths import oracle_series
from geode.series import Monomial, TruncationContext
from geode.solver import GeodeBundle, verify_core_identities


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--m", type=int, default=3)
    ap.add_argument("--degree", type=int, default=4)
    ap.add_argument("--no-oracle", action="store_true")
    args = ap.parse_args()

    ctx = TruncationContext(args.m, args.degree)
    t0 = time.perf_counter()
    b = GeodeBundle.build(ctx)
    built = time.perf_counter() - t0

    print(f"{'monomial':<24}{'S':>10}{'G':>10}{'H':>10}")
    for key in ctx.monomials():
        vals = [s._terms.get(key, 0) for s in (b.S, b.G, b.H)]
        if any(vals):
            print(f"{str(Monomial.from_key(key)):<24}" + "".join(f"{v:>10}" for v in vals))
    print(f"\nbuilt in {built:.3f}s")
    print(verify_core_identities(b).table())

    if not args.no_oracle:
        t0 = time.perf_counter()
        ok = (
            oracle_series("excursion", ctx) == b.S,
            oracle_series("nonnegative", ctx) == b.G,
            oracle_series("positive", ctx) == b.H,
        )
        print(f"path enumeration agrees (S, G, H): {ok}  [{time.perf_counter() - t0:.2f}s]")


if __name__ == "__main__":
    main()
