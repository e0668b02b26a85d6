"""Surface lattices, stereographic projection and file export."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .clifford import CliffordParams, closed_chart, verify_isometry
from .errors import DomainError, PoleProximityError, ToleranceError
from .mechanics import TorusParams, e_from_energy, energy_from_e, integrate_theta, potential
from .periodicity import closure_check, period_quadrature, search_rational_period
from .surface import ConstantTheta, SurfaceChart, curvature_report, embed_point, minimality_residual

DEFAULT_POLE = (0.0, 0.0, 0.0, -1.0)


@dataclass
class RunConfig:
    k: int = 0
    l: int = 1
    E: float | None = None
    e: float | None = None
    grid: tuple[int, int] = (32, 32)
    tol: float = 1e-7
    p: int | None = None
    q: int | None = None
    pole: tuple[float, float, float, float] = DEFAULT_POLE
    out: str | None = None
    fmt: str = "obj"

    def __post_init__(self):
        has_E, has_e = self.E is not None, self.e is not None
        closure = self.p is not None or self.q is not None
        if closure and (self.p is None or self.q is None):
            raise DomainError("closure data needs both p and q")
        if has_E and has_e:
            raise DomainError("give exactly one of E and e")
        if not (has_E or has_e or closure):
            raise DomainError("give exactly one of E and e")
        if has_E:
            e_from_energy(self.E)
        if has_e and not math.isfinite(self.e):
            raise DomainError("e must be finite")
        if min(self.grid) < 3:
            raise DomainError("grid needs at least 3 points per direction")
        TorusParams(self.k, self.l, 0.5)  # validates (k, l)

    @property
    def energy(self) -> float:
        if self.E is not None:
            return self.E
        return energy_from_e(self.resolved_e)

    @property
    def resolved_e(self) -> float:
        if self.e is not None:
            return abs(self.e)
        if self.E is not None:
            return e_from_energy(self.E)
        return search_rational_period(self.p, self.q, self.k, self.l)

    @property
    def params(self) -> TorusParams:
        return TorusParams(self.k, self.l, self.energy)


@dataclass
class SurfaceMesh:
    vertices: np.ndarray
    phi1: np.ndarray
    phi2: np.ndarray
    theta: np.ndarray
    shape: tuple[int, int]
    faces: np.ndarray
    metadata: dict = field(default_factory=dict)


@dataclass(frozen=True)
class _Domain:
    lengths: tuple[float, float]
    wrap: tuple[bool, bool]
    label: str


def _domain_and_chart(config: RunConfig):
    k, l = config.k, config.l
    e = config.resolved_e
    params = TorusParams(k, l, energy_from_e(e)) if config.E is None else config.params
    two_pi = 2.0 * math.pi
    closure = None
    if e == 0.0 and config.p is None:
        chart = SurfaceChart(ConstantTheta(), params)
        return _Domain((two_pi, two_pi), (True, True), "closed torus"), chart, params, closure
    if k == l:
        chart = closed_chart(CliffordParams(e, 0.0, k))
        return _Domain((two_pi, two_pi), (True, True), "closed torus"), chart, params, closure

    if config.p is not None:
        closure = closure_check(k, l, e, config.p, config.q)
        if not closure.passed:
            raise ToleranceError(
                f"surface does not close for (p, q) = ({config.p}, {config.q}); "
                f"mismatch {closure.max_mismatch:.2e}")

    if k == 0 or l == 0:
        winding = l if k == 0 else k
        if closure is not None:
            span = two_pi * abs(closure.shift[1] if k == 0 else closure.shift[0])
            dom = (span, True, "closed torus")
        else:
            period = period_quadrature(e, k, l).delta_phi2
            dom = (period / abs(winding), False, "open strip")
        if k == 0:
            domain = _Domain((two_pi, dom[0]), (True, dom[1]), dom[2])
        else:
            domain = _Domain((dom[0], two_pi), (dom[1], True), dom[2])
    else:
        domain = _Domain((two_pi, two_pi), (False, False), "open patch")

    t_max = abs(k) * domain.lengths[0] + abs(l) * domain.lengths[1]
    profile = integrate_theta(params, 1.01 * t_max + 1e-6)
    return domain, SurfaceChart(profile, params), params, closure


def _axis(n, length, wrap):
    if wrap:
        return np.arange(n) * (length / n)
    return np.linspace(0.0, length, n)


def _faces(n1, n2, wrap1, wrap2):
    rows = range(n1 if wrap1 else n1 - 1)
    cols = range(n2 if wrap2 else n2 - 1)
    faces = [(i * n2 + j, ((i + 1) % n1) * n2 + j,
              ((i + 1) % n1) * n2 + (j + 1) % n2, i * n2 + (j + 1) % n2)
             for i in rows for j in cols]
    return np.array(faces, dtype=np.int64).reshape(-1, 4)


def generate_mesh(config: RunConfig) -> SurfaceMesh:
    """Sample the surface on a uniform ``(phi1, phi2)`` lattice.

    k = l uses the closed form on the full torus.  Otherwise theta is
    integrated; with closure data ``(p, q)`` and one zero winding number the
    lattice covers the closing span and wraps, and without it one
    oscillation is meshed as an open strip.
    """
    return build_mesh(config)[0]


def build_mesh(config: RunConfig):
    """``generate_mesh`` that also hands back the chart it sampled."""
    domain, chart, params, closure = _domain_and_chart(config)
    n1, n2 = config.grid
    a1 = _axis(n1, domain.lengths[0], domain.wrap[0])
    a2 = _axis(n2, domain.lengths[1], domain.wrap[1])
    P1, P2 = np.meshgrid(a1, a2, indexing="ij")
    phi1, phi2 = P1.ravel(), P2.ravel()
    theta, _, _ = chart.profile.evaluate(params.k * phi1 + params.l * phi2)
    verts = embed_point(phi1, phi2, chart)
    norm_err = float(np.max(np.abs(np.linalg.norm(verts, axis=1) - 1.0)))
    if norm_err > 1e-10:
        raise ToleranceError(f"vertex off the unit sphere by {norm_err:.2e}")
    meta = {
        "k": params.k, "l": params.l, "E": params.E, "e": params.e,
        "domain": domain.label, "lengths": list(domain.lengths), "wrap": list(domain.wrap),
        "closure": None if closure is None else {
            "p": config.p, "q": config.q, "n_oscillations": closure.n_oscillations,
            "max_mismatch": closure.max_mismatch},
    }
    return SurfaceMesh(verts, phi1, phi2, theta, (n1, n2),
                       _faces(n1, n2, *domain.wrap), meta), chart


def _complement_basis(pole):
    axis = np.flatnonzero(np.abs(pole) == 1.0)
    if axis.size == 1:
        return np.delete(np.eye(4), axis[0], axis=0)
    _, _, vt = np.linalg.svd(pole[None, :])
    return vt[1:]


def stereographic_project(vertices, pole=DEFAULT_POLE, min_distance: float = 1e-6):
    """Project points of S^3 from ``pole`` onto the hyperplane orthogonal to it."""
    pole = np.asarray(pole, dtype=float)
    if abs(np.linalg.norm(pole) - 1.0) > 1e-12:
        raise DomainError("pole must be a unit vector")
    x = np.asarray(vertices, dtype=float)
    if np.any(np.linalg.norm(x - pole, axis=-1) < min_distance):
        raise PoleProximityError("a vertex lies within %g of the projection pole" % min_distance)
    basis = _complement_basis(pole)
    return (x @ basis.T) / (1.0 - x @ pole)[..., None]


def inverse_stereographic(points, pole=DEFAULT_POLE):
    pole = np.asarray(pole, dtype=float)
    y = np.asarray(points, dtype=float)
    basis = _complement_basis(pole)
    r2 = np.sum(y * y, axis=-1)[..., None]
    return (2.0 * (y @ basis) + (r2 - 1.0) * pole) / (r2 + 1.0)


def obj_text(mesh: SurfaceMesh, pole=DEFAULT_POLE) -> str:
    pts = stereographic_project(mesh.vertices, pole)
    buf = io.StringIO()
    for x, y, z in pts:
        buf.write(f"v {x:.17g} {y:.17g} {z:.17g}\n")
    for f in mesh.faces + 1:
        buf.write("f " + " ".join(str(int(i)) for i in f) + "\n")
    return buf.getvalue()


def csv_text(mesh: SurfaceMesh) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["phi1", "phi2", "theta", "x1", "x2", "x3", "x4"])
    for row in np.column_stack([mesh.phi1, mesh.phi2, mesh.theta, mesh.vertices]):
        w.writerow([f"{v:.17g}" for v in row])
    return buf.getvalue()


def json_text(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def export(mesh: SurfaceMesh, fmt: str, path, pole=DEFAULT_POLE, report: dict | None = None):
    """Write ``mesh`` as ``obj`` (projected), ``csv`` (raw 4D) or a ``json`` report."""
    if fmt == "obj":
        text = obj_text(mesh, pole)
    elif fmt == "csv":
        text = csv_text(mesh)
    elif fmt in ("json", "json-report"):
        text = json_text(report if report is not None else mesh_report(mesh))
    else:
        raise DomainError(f"unknown export format {fmt!r}")
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(text)
    return path


def read_obj(path):
    verts, faces = [], []
    with open(path, encoding="ascii") as fh:
        for line in fh:
            tag, *rest = line.split()
            if tag == "v":
                verts.append([float(v) for v in rest])
            elif tag == "f":
                faces.append([int(i) - 1 for i in rest])
    return np.array(verts), np.array(faces, dtype=np.int64)


def mesh_report(mesh: SurfaceMesh) -> dict:
    return {"metadata": mesh.metadata, "n_vertices": int(len(mesh.vertices)),
            "n_faces": int(len(mesh.faces)), "shape": list(mesh.shape)}


def verification_report(config: RunConfig) -> dict:
    """Residual maxima over the mesh vertices plus period and closure data."""
    mesh, chart = build_mesh(config)
    params = chart.params
    res = np.abs(minimality_residual(mesh.phi1, mesh.phi2, chart))
    t = params.k * mesh.phi1 + params.l * mesh.phi2
    th, thd, _ = chart.profile.evaluate(t)
    energy_res = np.abs(thd**2 + potential(th, params))
    curv = curvature_report(mesh.phi1, mesh.phi2, chart)
    e = params.e
    period = period_quadrature(e, params.k, params.l)
    report = {
        "params": {"k": params.k, "l": params.l, "E": params.E, "e": e},
        "grid": list(mesh.shape),
        "max_minimality_residual": float(res.max()),
        "max_energy_residual": float(energy_res.max()),
        "gaussian_R_max_abs": float(np.max(np.abs(curv.gaussian_R))),
        "det_ratio_range": [float(curv.ratio_h_over_g.min()), float(curv.ratio_h_over_g.max())],
        "max_unit_norm_error": float(np.max(np.abs(np.linalg.norm(mesh.vertices, axis=1) - 1.0))),
        "period": {"delta": period.delta_phi2, "ratio_to_pi": period.ratio_to_pi,
                   "rational": None if period.rational is None else str(period.rational)},
        "closure": mesh.metadata["closure"],
        "domain": mesh.metadata["domain"],
        "tol": config.tol,
    }
    if params.k == params.l == 1:
        report["max_isometry_deviation"] = verify_isometry(CliffordParams(e), 2000)
    report["passed"] = report["max_minimality_residual"] <= config.tol
    return report
