"""Run every verification suite at its default size and print a summary.

Usage: python3 scripts/run_all_suites.py [--seed N] [--out DIR]
"""

import argparse
import json
import time
from pathlib import Path

from riskopt.verify import SUITES, run_suite


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--out", type=Path, help="write one JSON report per suite here")
    args = parser.parse_args()
    if args.out:
        args.out.mkdir(parents=True, exist_ok=True)
    failed = 0
    for name in SUITES:
        t0 = time.perf_counter()
        rep = run_suite(name, seed=args.seed)
        elapsed = time.perf_counter() - t0
        failed += not rep.passed
        print(f"{'PASS' if rep.passed else 'FAIL'}  {name:<13} {len(rep.checks):>3} checks  {elapsed:6.2f}s")
        if args.out:
            (args.out / f"{name}.json").write_text(json.dumps(rep.to_dict(), indent=2, sort_keys=True) + "\n")
    return 1 if failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
