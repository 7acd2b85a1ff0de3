#!/usr/bin/env python3
"""Run the randomized theorem audit and print the per-check table.

Equivalent to ``amaldup check-paper`` but convenient for experiments:
sweeps several seeds, prints timing per check family, and optionally
dumps failing witnesses to a directory.

    python3 scripts/run_audit.py --trials 100 --seeds 0 1 2 --witness-dir /tmp/w
"""

import argparse
import json
import pathlib
import sys
import time

from amaldup import audit


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=100)
    parser.add_argument("--seeds", type=int, nargs="+", default=[0])
    parser.add_argument("--tol", type=float, default=1e-9)
    parser.add_argument("--witness-dir", default=None,
                        help="write failing instances as bundle JSON here")
    args = parser.parse_args()

    any_fail = False
    for seed in args.seeds:
        print(f"== seed {seed}, {args.trials} trials per check ==")
        start = time.time()
        rows = audit.run_full_audit(args.trials, seed, args.tol)
        for row in rows:
            mark = "pass" if row.passed else "FAIL"
            print(f"  {mark}  {row.id:<42s} trials={row.trials:<5d} "
                  f"defect={row.defect:.3e}")
            if not row.passed:
                any_fail = True
                print(f"        {row.witness['note']}")
                if args.witness_dir and row.witness.get("bundle"):
                    out = pathlib.Path(args.witness_dir)
                    out.mkdir(parents=True, exist_ok=True)
                    path = out / f"{row.id}-seed{seed}.json"
                    path.write_text(json.dumps(row.witness["bundle"], indent=2))
                    print(f"        witness written to {path}")
        print(f"  ({time.time() - start:.1f}s)")
    return 1 if any_fail else 0


if __name__ == "__main__":
    sys.exit(main())
