"""List the case-2 points where ``floor(n/2)`` subsurfaces of genus at most
``ceil(2g/n)`` cannot cover the genus, and how far the construction's
entropy then sits above ``4 log ceil(2g/n) + 4 log 7``.

    python3 scripts/odd_n_gap.py --g-max 64
"""

import argparse
import csv
import math
import sys

from purebraid.bounds import main_upper
from purebraid.curves import Case, build_configuration, case_for, configuration_dilatation


def main():
    ap = argparse.ArgumentParser(description="odd-n genus-cap gap in case 2")
    ap.add_argument("--g-max", type=int, default=64)
    args = ap.parse_args()

    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["g", "n", "parts", "largest_part", "cap", "entropy", "main_upper", "excess"])
    capped = over = 0
    for g in range(2, args.g_max + 1):
        for n in range(5, 2 * g, 2):
            if case_for(g, n) is not Case.CASE2:
                continue
            c = build_configuration(g, n)
            if c.within_genus_cap:
                continue
            capped += 1
            h = configuration_dilatation(c).entropy
            ub = main_upper(g, n)
            over += h > ub
            w.writerow([g, n, len(c.subsurface_genera), max(c.subsurface_genera), c.genus_cap,
                        format(h, ".12g"), format(ub, ".12g"), format(h - ub, ".6g")])
    print(f"# {capped} odd-n points exceed the genus cap; {over} of them exceed the entropy bound",
          file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
