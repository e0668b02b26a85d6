"""Check the k = l = 1 deformation family: minimality, flatness and the explicit isometry.

    python3 scripts/clifford_deformation.py --samples 10000
"""

import argparse

import numpy as np

from s3tori.clifford import CliffordParams, closed_chart, verify_isometry, verify_minimal_closed_form
from s3tori.surface import curvature_report


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=10_000)
    ap.add_argument("--e", type=float, nargs="*", default=[0.0, 0.1, 0.5, 1.0, 2.0, 5.0, 20.0, 100.0])
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    p1, p2 = rng.uniform(0, 2 * np.pi, (2, args.samples))
    print(f"{'e':>8} {'E':>12} {'minimality':>12} {'|R|':>10} {'|ratio+1|':>10} {'isometry':>10}")
    for e in args.e:
        cp = CliffordParams(e)
        rep = curvature_report(p1, p2, closed_chart(cp))
        print(f"{e:8.3g} {cp.E:12.9f} {verify_minimal_closed_form(cp, args.samples):12.2e} "
              f"{np.abs(rep.gaussian_R).max():10.2e} {np.abs(rep.ratio_h_over_g + 1).max():10.2e} "
              f"{verify_isometry(cp, args.samples):10.2e}")


if __name__ == "__main__":
    main()
