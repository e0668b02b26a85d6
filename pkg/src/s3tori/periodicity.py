"""Advance of ``t = k phi1 + l phi2`` per theta-oscillation, and closure.

In the reparametrised angle ``phi~`` the orbit is the k = l closed form,

    sin^2 theta = (1 + f) / 2,    f = e sin(phi~) / sqrt(1 + e^2 sin^2 phi~),

and ``dt/dphi~ = sqrt(N/2) sqrt(1 + r f)`` with ``N = k^2 + l^2`` and
``r = (k^2 - l^2) / N``.  One oscillation is ``phi~ -> phi~ + 2 pi``.  For
``(k, l) = (0, 1)`` the advance is that of ``phi2`` and also has a
third-kind elliptic closed form.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

from .elliptic import elliptic_pi_incomplete
from .errors import DomainError, NoSolutionError, ToleranceError
from .mechanics import TorusParams, e_from_energy, energy_from_e, integrate_theta
from .surface import SurfaceChart, embed_point

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class PeriodResult:
    delta_phi2: float
    ratio_to_pi: float
    e: float
    E: float
    method: str
    rational: Fraction | None = None

    @classmethod
    def build(cls, delta, e, E, method, max_denominator=64, rtol=1e-9):
        ratio = delta / math.pi
        frac = Fraction(ratio).limit_denominator(max_denominator)
        rational = frac if abs(float(frac) - ratio) <= rtol * max(1.0, ratio) else None
        return cls(delta, ratio, e, E, method, rational)


@dataclass(frozen=True)
class EllipticArgs:
    v_plus: float
    v_minus: float
    amplitude: float
    characteristic: float
    modulus: float


def _one_pm_f(sin_u, e):
    """``(1 + f, 1 - f)`` computed without cancellation."""
    es = e * sin_u
    q = np.sqrt(1.0 + es * es)
    small = 1.0 / (q * (q + np.abs(es)))
    big = 1.0 + np.abs(es) / q
    pos = es >= 0.0
    return np.where(pos, big, small), np.where(pos, small, big)


def _one_plus_rf(sin_u, e, r):
    onep, onem = _one_pm_f(sin_u, e)
    return (1.0 - abs(r)) + abs(r) * (onep if r >= 0.0 else onem)


def dphi_dtilde(phi_tilde, k: int, l: int, e: float):
    """``dt/dphi~ = sqrt(N/2) sqrt(1 + r e sin / sqrt(1 + e^2 sin^2))``."""
    if k == 0 and l == 0:
        raise DomainError("(k, l) = (0, 0) does not define a travelling wave")
    N = k * k + l * l
    r = (k * k - l * l) / N
    return math.sqrt(0.5 * N) * np.sqrt(_one_plus_rf(np.sin(phi_tilde), e, r))


def _breakpoints(e):
    """Subintervals of ``[0, pi/2]`` that resolve the ``1/e`` layer at 0."""
    pts = [0.0]
    if e > 1.0:
        x = 1.0 / e
        while x < 0.5:
            pts.append(x)
            x *= 8.0
    pts.append(0.5 * math.pi)
    return pts


def period_quadrature(e: float, k: int = 0, l: int = 1, tol: float = 1e-12) -> PeriodResult:
    """Advance of ``t`` over one oscillation by adaptive Gauss-Kronrod quadrature.

    ``int_0^{2pi} dt/dphi~`` is folded onto ``[0, pi/2]`` using that the
    integrand depends on ``sin(phi~)`` only, and the boundary layer of width
    ``1/e`` is split off geometrically.
    """
    if tol <= 0.0:
        raise DomainError("tol must be positive")
    if k == 0 and l == 0:
        raise DomainError("(k, l) = (0, 0) does not define a travelling wave")
    e = abs(e)
    N = k * k + l * l
    r = (k * k - l * l) / N

    def folded(u):
        s = math.sin(u)
        return (math.sqrt(_one_plus_rf(s, e, r)) + math.sqrt(_one_plus_rf(-s, e, r)))

    pts = _breakpoints(e)
    total, err = 0.0, 0.0
    for a, b in zip(pts[:-1], pts[1:]):
        val, est = quad(folded, a, b, epsabs=0.1 * tol, epsrel=0.1 * tol, limit=200)
        total += val
        err += est
    scale = 2.0 * math.sqrt(0.5 * N)
    if scale * err > tol * max(1.0, scale * total):
        raise ToleranceError(f"quadrature error estimate {scale * err:.2e} exceeds {tol:.2e}")
    return PeriodResult.build(scale * total, e, energy_from_e(e), "quadrature")


def elliptic_args(E: float) -> EllipticArgs:
    """Arguments of the complete third-kind integral for one half-oscillation."""
    if not (0.0 < E < 0.5):
        raise DomainError("E must lie in (0, 1/2); at E = 1/2 the period is sqrt(2) pi")
    v_plus = 0.5 + math.sqrt((0.5 - E) * (0.5 + E))
    v_minus = E * E / v_plus
    return EllipticArgs(v_plus, v_minus, 0.5 * math.pi,
                        1.0 - v_plus / v_minus, math.sqrt(1.0 - v_minus / v_plus))


def phi2_of_v(v: float, E: float) -> float:
    """Advance of ``phi2`` while ``sin^2 theta`` climbs from ``v_-`` to ``v`` (k=0, l=1).

    Substituting ``v = v_- + (v_+ - v_-) sin^2 psi`` gives
    ``Pi(psi; 1 - v_+/v_-, sqrt(1 - v_-/v_+)) / sqrt(v_-)``.
    """
    args = elliptic_args(E)
    if not (args.v_minus <= v <= args.v_plus):
        raise DomainError(f"v = {v} outside the oscillation band")
    x = (v - args.v_minus) / (args.v_plus - args.v_minus)
    psi = math.asin(math.sqrt(min(max(x, 0.0), 1.0)))
    return elliptic_pi_incomplete(psi, args.characteristic, args.modulus) / math.sqrt(args.v_minus)


def period_elliptic(E: float) -> PeriodResult:
    """Advance of ``phi2`` per oscillation for ``(k, l) = (0, 1)`` in closed form."""
    args = elliptic_args(E)
    half = elliptic_pi_incomplete(args.amplitude, args.characteristic, args.modulus)
    delta = 2.0 * half / math.sqrt(args.v_minus)
    return PeriodResult.build(delta, e_from_energy(E), E, "elliptic")


def period_range(k: int, l: int) -> tuple[float, float]:
    """``(period at e = 0, limit as e -> infinity)``."""
    N = k * k + l * l
    return 2.0 * math.pi * math.sqrt(0.5 * N), math.pi * (abs(k) + abs(l))


def search_period(target: float, k: int = 0, l: int = 1, tol: float = 1e-10,
                  e_max: float = 1e8, n_scan: int = 120) -> float:
    """Smallest ``e >= 0`` whose period equals ``target``.

    Brackets by a log-spaced scan of ``e`` (monotonicity is not assumed),
    then refines with Brent's method.
    """
    p0, p_inf = period_range(k, l)
    if abs(target - p0) <= tol:
        return 0.0
    lo, hi = min(p0, p_inf), max(p0, p_inf)
    if not (lo < target < hi):
        raise NoSolutionError(f"target {target:.12g} outside attainable range ({lo:.12g}, {hi:.12g}]")

    def gap(e):
        return period_quadrature(e, k, l, tol=min(tol, 1e-12)).delta_phi2 - target

    grid = np.concatenate([[0.0], np.logspace(-3, math.log10(e_max), n_scan)])
    vals = np.array([gap(e) for e in grid])
    if not (np.all(np.diff(vals) <= 0.0) or np.all(np.diff(vals) >= 0.0)):
        log.warning("period is not monotone in e on the scan grid; using the first bracket")
    sign_change = np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) <= 0.0)[0]
    if sign_change.size == 0:
        raise NoSolutionError(f"no bracket for target {target:.12g} up to e = {e_max:g}")
    i = int(sign_change[0])
    a, b = grid[i], grid[i + 1]
    if vals[i] == 0.0:
        return float(a)
    e_star = brentq(gap, a, b, xtol=1e-15, rtol=4.0 * np.finfo(float).eps, maxiter=200)
    miss = abs(gap(e_star))
    if miss > tol:
        raise ToleranceError(f"root search stalled with |period - target| = {miss:.2e}")
    return float(e_star)


def search_rational_period(p: int, q: int, k: int = 0, l: int = 1, tol: float = 1e-10) -> float:
    """``e*`` whose per-oscillation advance is ``(p/q) pi``."""
    if q <= 0 or p <= 0:
        raise DomainError("p and q must be positive integers")
    return search_period(p * math.pi / q, k, l, tol)


@dataclass(frozen=True)
class ClosureResult:
    passed: bool
    max_mismatch: float
    n_oscillations: int
    shift: tuple[int, int]
    t_shift: float

    def __bool__(self):
        return self.passed


def _ext_gcd(a, b):
    if b == 0:
        return (abs(a), (1 if a >= 0 else -1), 0)
    g, x, y = _ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


def closing_translation(k: int, l: int, p: int, q: int):
    """Oscillation count ``n`` and lattice shift ``(a, b)`` that should close the surface.

    If one oscillation advances ``t`` by ``(p/q) pi``, then ``n`` oscillations
    advance it by ``2 pi N`` with ``N = n p / (2q)``.  Translating
    ``(phi1, phi2)`` by ``2 pi (a, b)`` with ``k a + l b = N`` fixes both the
    angles and theta, so ``n`` is the least multiple of ``q`` for which ``N``
    is an integer divisible by ``gcd(k, l)``.
    """
    g, x, y = _ext_gcd(k, l)
    j = 1
    while (j * p) % 2 or ((j * p) // 2) % g:
        j += 1
    N = j * p // 2
    return j * q, (x * N // g, y * N // g), N


def closure_check(k: int, l: int, e: float, p: int, q: int, n_samples: int = 2000,
                  tol: float = 1e-8, seed: int = 0) -> ClosureResult:
    """Check that the integrated surface repeats after the closing translation."""
    E = energy_from_e(e)
    params = TorusParams(k, l, E)
    n_osc, (a, b), N = closing_translation(k, l, p, q)
    t_shift = 2.0 * math.pi * N
    one_osc = p * math.pi / q
    profile = integrate_theta(params, t_shift + 1.05 * one_osc)
    chart = SurfaceChart(profile, params)

    rng = np.random.default_rng(seed)
    t = rng.uniform(0.0, one_osc, n_samples)
    sigma = rng.uniform(-math.pi, math.pi, n_samples)
    nn = float(k * k + l * l)
    phi1 = t * k / nn - sigma * l
    phi2 = t * l / nn + sigma * k
    x0 = embed_point(phi1, phi2, chart)
    x1 = embed_point(phi1 + 2.0 * math.pi * a, phi2 + 2.0 * math.pi * b, chart)
    mismatch = float(np.max(np.linalg.norm(x1 - x0, axis=-1)))
    return ClosureResult(mismatch <= tol, mismatch, n_osc, (a, b), t_shift)
