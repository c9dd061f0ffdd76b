#!/usr/bin/env python3
"""Run the full acceptance suite and print one verdict line per criterion.

Exit code 0 iff all eight criteria pass.  Equivalent to `arquiver accept`.
"""

import argparse
import sys

from arquiver import acceptance


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument(
        "--emit-dir", default=None, help="directory for counterexample bundles"
    )
    args = parser.parse_args()
    results = acceptance.run_all(seed=args.seed, out_dir=args.emit_dir)
    print(acceptance.format_report(results, seed=args.seed))
    return 0 if all(r.passed for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())
