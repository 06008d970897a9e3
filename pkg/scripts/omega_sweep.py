"""Print how the certified interior constant moves with the tuple length.

Usage:
    python3 scripts/omega_sweep.py --alpha 2 --n-max 30
    python3 scripts/omega_sweep.py --alpha -1 --n-max 20 --reference "n**-0.5"

The reference expression, if given, is evaluated per row with n in scope
and printed alongside omega for eyeballing decay rates.
"""

import argparse
import math

from meangap.constants import sweep_constants
from meangap.means import ExponentPair


def parse_args() -> argparse.Namespace:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--alpha", type=float, required=True)
    ap.add_argument("--n-min", type=int, default=3)
    ap.add_argument("--n-max", type=int, required=True)
    ap.add_argument("--reference", default=None,
                    help="expression in n to print next to omega")
    return ap.parse_args()


def main() -> None:
    args = parse_args()
    e = ExponentPair.from_alpha(args.alpha)
    certs = sweep_constants(e, args.n_min, args.n_max)
    header = f"{'n':>4}  {'regime':<16} {'lower':>22} {'upper':>22} {'omega':>22}"
    if args.reference:
        header += f" {args.reference:>18}"
    print(f"alpha = {e.alpha:g}, r = {e.r:g}")
    print(header)
    prev = None
    moves = set()
    for cert in certs:
        omega = cert.omega
        row = (f"{cert.n:>4}  {cert.regime.value:<16}"
               f" {cert.lower_bound:>22.15g} {cert.upper_bound:>22.15g}"
               f" {'' if omega is None else format(omega, '>22.15g'):>22}")
        if args.reference:
            ref = eval(args.reference, {"n": cert.n, "math": math})
            row += f" {ref:>18.12g}"
        print(row)
        if omega is not None and prev is not None:
            moves.add("up" if omega > prev else "down" if omega < prev else "flat")
        if omega is not None:
            prev = omega
    if not moves:
        print("omega trend: constant (no interior extremum in this regime)")
    elif moves <= {"up"}:
        print("omega trend: strictly increasing")
    elif moves <= {"down"}:
        print("omega trend: strictly decreasing")
    else:
        print(f"omega trend: mixed ({sorted(moves)})")


if __name__ == "__main__":
    main()
