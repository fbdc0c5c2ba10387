#!/usr/bin/env python3
"""Run the full acceptance suite and print one line per criterion.

Equivalent to `commacat selftest`, but importable state stays in this
process, which makes it convenient under a debugger.
"""

import argparse
import sys

from commacat import acceptance


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    failed = 0
    for result in acceptance.run_all(seed=args.seed):
        mark = "PASS" if result.passed else "FAIL"
        work = ", ".join(f"{k}={v}" for k, v in sorted(result.details.items()))
        print(f"{mark} {result.key:22s} [{work}] {result.elapsed:.2f}s")
        for message in result.failures:
            print(f"     {message}")
        if not result.passed:
            failed += 1
    print("all criteria passed" if failed == 0 else f"{failed} criteria failed")
    return 0 if failed == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
