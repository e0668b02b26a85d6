"""Tabulate the per-oscillation advance of t against the deformation e.

    python3 scripts/period_scan.py --k 0 --l 1 --n 25
"""

import argparse
import math

import numpy as np

from s3tori.mechanics import energy_from_e
from s3tori.periodicity import period_elliptic, period_quadrature, period_range


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k", type=int, default=0)
    ap.add_argument("--l", type=int, default=1)
    ap.add_argument("--n", type=int, default=25)
    ap.add_argument("--e-max", type=float, default=1e4)
    args = ap.parse_args()

    lo, hi = period_range(args.k, args.l)
    print(f"# (k, l) = ({args.k}, {args.l}); e = 0 gives {lo / math.pi:.12f} pi, "
          f"e -> inf gives {hi / math.pi:.12f} pi")
    header = f"{'e':>12} {'E':>14} {'delta/pi':>16} {'rational':>9}"
    if (args.k, args.l) == (0, 1):
        header += f" {'|quad - elliptic|':>18}"
    print(header)
    for e in np.concatenate([[0.0], np.logspace(-2, math.log10(args.e_max), args.n - 1)]):
        res = period_quadrature(e, args.k, args.l)
        line = f"{e:12.5g} {energy_from_e(e):14.10f} {res.ratio_to_pi:16.12f} {str(res.rational or '-'):>9}"
        if (args.k, args.l) == (0, 1) and e > 0:
            line += f" {abs(period_elliptic(res.E).delta_phi2 - res.delta_phi2):18.2e}"
        print(line)


if __name__ == "__main__":
    main()
