"""Command line front end: ``s3tori {embed,verify,period,search,isometry,mesh}``.

Exit status is 0 on success, 2 on a parameter error and 3 when a numerical
tolerance is not met.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys

import numpy as np

from . import mesh as meshmod
from .clifford import CliffordParams, closed_chart, verify_isometry, verify_minimal_closed_form
from .errors import DomainError, NoRealRootError, NoSolutionError, PoleProximityError, ToleranceError
from .mechanics import TorusParams, e_from_energy, energy_from_e, integrate_theta
from .periodicity import (closure_check, period_elliptic, period_quadrature,
                          search_period, search_rational_period)
from .surface import SurfaceChart, embed_point

EXIT_OK, EXIT_PARAM, EXIT_TOL = 0, 2, 3


def _grid(text):
    parts = text.lower().split("x")
    try:
        dims = tuple(int(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must look like 64 or 64x32, got {text!r}")
    if len(dims) == 1:
        dims = dims * 2
    if len(dims) != 2:
        raise argparse.ArgumentTypeError(f"grid must look like 64 or 64x32, got {text!r}")
    return dims


def _pole(text):
    try:
        vals = tuple(float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"pole must be four comma-separated numbers, got {text!r}")
    if len(vals) != 4:
        raise argparse.ArgumentTypeError("pole must have four components")
    return vals


def _add_torus(p, energy_required=True):
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--l", type=int, default=1)
    g = p.add_mutually_exclusive_group(required=energy_required)
    g.add_argument("--E", type=float, help="mechanical energy, 0 < E <= 1/2")
    g.add_argument("--e", type=float, help="deformation parameter sinh(gamma)")


def _energy(args):
    return args.E if args.E is not None else energy_from_e(args.e)


def _emit(payload, out=None):
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_embed(args):
    params = TorusParams(args.k, args.l, _energy(args))
    t = abs(params.k * args.phi1) + abs(params.l * args.phi2)
    if params.k == params.l:
        chart = closed_chart(CliffordParams(params.e, 0.0, params.k))
    else:
        chart = SurfaceChart(integrate_theta(params, max(t, 1e-3) * 1.01), params)
    x = embed_point(args.phi1, args.phi2, chart)
    _emit({"phi1": args.phi1, "phi2": args.phi2, "x": [float(v) for v in x],
           "norm": float(np.linalg.norm(x))}, args.out)
    return EXIT_OK


def _config(args, **extra):
    return meshmod.RunConfig(k=args.k, l=args.l, E=args.E, e=args.e, grid=args.grid,
                             tol=args.tol, out=args.out, **extra)


def cmd_verify(args):
    report = meshmod.verification_report(_config(args))
    _emit(report, args.out)
    return EXIT_OK if report["passed"] else EXIT_TOL


def cmd_period(args):
    E = _energy(args)
    e = e_from_energy(E)
    res = period_quadrature(e, args.k, args.l, tol=args.tol)
    payload = {"k": args.k, "l": args.l, "E": E, "e": e,
               "delta": res.delta_phi2, "ratio_to_pi": res.ratio_to_pi,
               "rational": None if res.rational is None else str(res.rational)}
    if (args.k, args.l) == (0, 1) and E < 0.5:
        ell = period_elliptic(E)
        payload["delta_elliptic"] = ell.delta_phi2
        payload["method_gap"] = abs(ell.delta_phi2 - res.delta_phi2)
    _emit(payload, args.out)
    return EXIT_OK


def cmd_search(args):
    if args.target is not None:
        e_star = search_period(args.target * math.pi, args.k, args.l, args.tol)
        payload = {"target_over_pi": args.target, "e": e_star, "E": energy_from_e(e_star)}
        _emit(payload, args.out)
        return EXIT_OK
    if args.p is None or args.q is None:
        raise DomainError("search needs --p and --q (or --target)")
    e_star = search_rational_period(args.p, args.q, args.k, args.l, args.tol)
    period = period_quadrature(e_star, args.k, args.l).delta_phi2
    payload = {"p": args.p, "q": args.q, "e": e_star, "E": energy_from_e(e_star),
               "delta": period, "gap": abs(period - args.p * math.pi / args.q)}
    status = EXIT_OK
    if not args.no_closure:
        closure = closure_check(args.k, args.l, e_star, args.p, args.q)
        payload["closure"] = {"passed": closure.passed, "max_mismatch": closure.max_mismatch,
                              "n_oscillations": closure.n_oscillations,
                              "shift": list(closure.shift)}
        status = EXIT_OK if closure.passed else EXIT_TOL
    _emit(payload, args.out)
    return status


def cmd_isometry(args):
    cp = CliffordParams(args.e)
    dev = verify_isometry(cp, args.samples)
    resid = verify_minimal_closed_form(cp, args.samples)
    _emit({"e": args.e, "E": cp.E, "max_isometry_deviation": dev,
           "max_minimality_residual": resid, "samples": args.samples}, args.out)
    return EXIT_OK if dev <= args.tol else EXIT_TOL


def cmd_mesh(args):
    config = _config(args, p=args.p, q=args.q, pole=args.pole, fmt=args.format)
    if not args.out:
        raise DomainError("mesh needs --out")
    report = meshmod.verification_report(config) if args.format.startswith("json") else None
    m = meshmod.generate_mesh(config)
    meshmod.export(m, args.format, args.out, pole=args.pole, report=report)
    sys.stderr.write(f"wrote {len(m.vertices)} vertices, {len(m.faces)} faces to {args.out}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="s3tori", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("embed", help="evaluate one surface point")
    _add_torus(p)
    p.add_argument("--phi1", type=float, required=True)
    p.add_argument("--phi2", type=float, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("verify", help="minimality / curvature report on a lattice")
    _add_torus(p)
    p.add_argument("--grid", type=_grid, default=(64, 64))
    p.add_argument("--tol", type=float, default=1e-7)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("period", help="advance of t per theta-oscillation")
    _add_torus(p)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--out")
    p.set_defaults(func=cmd_period)

    p = sub.add_parser("search", help="find e whose period is (p/q) pi")
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--l", type=int, default=1)
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--target", type=float, help="target period divided by pi")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--no-closure", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("isometry", help="check 2g = J^T J on the k = l = 1 family")
    p.add_argument("--e", type=float, required=True)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--out")
    p.set_defaults(func=cmd_isometry)

    p = sub.add_parser("mesh", help="write a lattice as OBJ, CSV or JSON")
    _add_torus(p, energy_required=False)
    p.add_argument("--grid", type=_grid, default=(64, 64))
    p.add_argument("--tol", type=float, default=1e-7)
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--pole", type=_pole, default=meshmod.DEFAULT_POLE)
    p.add_argument("--format", choices=["obj", "csv", "json", "json-report"], default="obj")
    p.add_argument("--out")
    p.set_defaults(func=cmd_mesh)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (DomainError, NoSolutionError, PoleProximityError, NoRealRootError) as exc:
        sys.stderr.write(f"s3tori: parameter error: {exc}\n")
        return EXIT_PARAM
    except ToleranceError as exc:
        sys.stderr.write(f"s3tori: tolerance not met: {exc}\n")
        return EXIT_TOL


if __name__ == "__main__":
    sys.exit(main())
