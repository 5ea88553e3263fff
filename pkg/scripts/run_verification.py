#!/usr/bin/env python3
"""Run every registered invariant suite and print a result table."""

import argparse
import sys
import time

from grosslap.verify import ALL_CHECKS


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--suite", action="append", default=None,
                    help="restrict to named suites (repeatable)")
    args = ap.parse_args()

    names = args.suite or list(ALL_CHECKS)
    unknown = [n for n in names if n not in ALL_CHECKS]
    if unknown:
        print(f"unknown suites: {', '.join(unknown)}", file=sys.stderr)
        return 2

    all_ok = True
    for name in names:
        t0 = time.time()
        res = ALL_CHECKS[name](seed=args.seed)
        status = "PASS" if res.passed else "FAIL"
        all_ok &= res.passed
        print(f"{status}  {res.name:35s} max_error={res.max_error:10.3e}  "
              f"tol={res.tolerance:8.1e}  samples={res.samples:5d}  "
              f"[{time.time() - t0:5.1f}s]")
        if not res.passed:
            print(f"      {res.identity}")
    return 0 if all_ok else 1


if __name__ == "__main__":
    sys.exit(main())
