#!/usr/bin/env python3
"""Run the six golden examples end to end and print a report.

Equivalent to `cyclotome corpus`, kept as a script for API illustration.
"""

import argparse
import time

from cyclotome.corpus import golden_examples, run_example
from cyclotome.weights import Caps


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-enum", type=int, default=None,
                    help="cap on enumerated inputs for naive and period sums")
    args = ap.parse_args()
    caps = Caps() if args.max_enum is None else \
        Caps(naive=args.max_enum, tsum=args.max_enum)
    failures = 0
    for ex in golden_examples():
        t0 = time.time()
        res = run_example(ex, caps)
        status = "PASS" if res.passed else "FAIL"
        print(f"{status} {ex.name} [{', '.join(res.methods)}] "
              f"({time.time() - t0:.2f}s)")
        for diff in res.diffs:
            print(f"   {diff}")
        failures += not res.passed
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
