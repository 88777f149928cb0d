"""Construction entropy against every applicable bound for one genus, as
CSV for external plotting.

    python3 scripts/entropy_profile.py --g 12 > g12.csv
"""

import argparse
import csv
import sys

from purebraid.bounds import bound_profile
from purebraid.harness import evaluate_point, fmt


def main():
    ap = argparse.ArgumentParser(description="entropy and bounds along n for a fixed genus")
    ap.add_argument("--g", type=int, required=True)
    ap.add_argument("--n-max", type=int, default=None, help="default 2g + 16")
    args = ap.parse_args()

    n_max = args.n_max or 2 * args.g + 16
    w = csv.writer(sys.stdout, lineterminator="\n")
    names = None
    for n in range(1, n_max + 1):
        point = evaluate_point(args.g, n)
        profile = bound_profile(args.g, n)
        if names is None:
            names = [k for k, e in profile.entries.items() if e.quantity == "L(PB_n(S_g))"]
            w.writerow(["n", "case", "entropy", *names])
        values = [fmt(profile.entries[k].value) if profile.entries[k].valid else "" for k in names]
        w.writerow([n, point.case, fmt(point.entropy), *values])
    return 0


if __name__ == "__main__":
    sys.exit(main())
