"""Run the consistency sweep and write CSV and JSON reports.

    python3 scripts/run_sweep.py --g-max 64 --out reports/
"""

import argparse
import sys
from pathlib import Path

from purebraid.harness import SweepSpec, run_sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--g-min", type=int, default=2)
    ap.add_argument("--g-max", type=int, default=64)
    ap.add_argument("--n-rule", default="1..2g+16")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out", type=Path, default=Path("reports"))
    args = ap.parse_args()

    report = run_sweep(SweepSpec(args.g_min, args.g_max, args.n_rule), jobs=args.jobs)
    args.out.mkdir(parents=True, exist_ok=True)
    (args.out / "sweep.csv").write_text(report.to_csv())
    (args.out / "sweep.json").write_text(report.to_json())
    print(f"{report.grid_size} points, {len(report.violations)} violations, "
          f"{len(report.errors)} errors, {report.elapsed:.2f} s -> {args.out}/")
    for note in report.discrepancies:
        print("discrepancy:", note)
    return 0 if report.passed else 2


if __name__ == "__main__":
    sys.exit(main())
