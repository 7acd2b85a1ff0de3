#!/usr/bin/env python3
"""Print everything this package can say about one bundle.

    python3 scripts/explore_fixture.py fixtures/triangular.json
"""

import argparse
import sys

from amaldup.cli import run_command


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("bundle")
    parser.add_argument("--tol", default="1e-9")
    args = parser.parse_args()

    worst = 0
    for command in ("validate", "spectrum", "semisimple", "multipliers",
                    "arens", "centres", "derivations", "cyclic",
                    "property-h", "amenability"):
        print(f"-- {command}")
        code, report = run_command([command, args.bundle, "--tol", args.tol])
        print("\n".join("   " + line for line in report.splitlines()))
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    sys.exit(main())
