"""The k = l family in closed form and its isometry to the square torus.

With ``alpha(phi) = 2 theta`` and ``phi = phi1 + phi2`` the equation of
motion integrates to

    sin(alpha) = 1 / sqrt(1 + e^2 sin^2(phi - phi0)),
    cos(alpha) = -e sin(phi - phi0) / sqrt(1 + e^2 sin^2(phi - phi0)),

with ``e = sinh(gamma)`` and ``E = 1 / (2 cosh(gamma))``.  Every member is
flat and is carried onto ``(cos, sin, cos, sin)/sqrt(2)`` by an explicit
reparametrisation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.stats import qmc

from .errors import DomainError, NoRealRootError, ToleranceError
from .mechanics import TorusParams, energy_from_e
from .surface import SurfaceChart, fundamental_forms, minimality_residual


@dataclass(frozen=True)
class CliffordParams:
    e: float
    phi0: float = 0.0
    k: int = 1

    def __post_init__(self):
        if self.k == 0 or int(self.k) != self.k:
            raise DomainError(f"k must be a non-zero integer, got {self.k!r}")

    @property
    def E(self) -> float:
        return energy_from_e(self.e)

    @property
    def a(self) -> float:
        return math.sqrt(1.0 + self.e * self.e)

    def torus_params(self) -> TorusParams:
        return TorusParams(self.k, self.k, self.E)


@dataclass(frozen=True)
class AlphaValue:
    alpha: np.ndarray
    sin_alpha: np.ndarray
    cos_alpha: np.ndarray
    alpha_prime: np.ndarray
    alpha_double_prime: np.ndarray


def alpha_closed_form(phi, params: CliffordParams) -> AlphaValue:
    """``alpha = 2 theta`` and its first two ``phi``-derivatives."""
    e = params.e
    psi = np.asarray(phi, dtype=float) - params.phi0
    sp, cp = np.sin(psi), np.cos(psi)
    q = 1.0 + e * e * sp * sp
    root = np.sqrt(q)
    sin_a = 1.0 / root
    cos_a = -e * sp / root
    ap = e * cp / q
    app = -e * sp * (1.0 + e * e + e * e * cp * cp) / (q * q)
    return AlphaValue(np.arctan2(sin_a, cos_a), sin_a, cos_a, ap, app)


def second_order_residual(phi, params: CliffordParams):
    """``sin(a) a'' - 2 a'^2 cos(a) - cos(a) sin^2(a)``."""
    av = alpha_closed_form(phi, params)
    return (av.sin_alpha * av.alpha_double_prime
            - 2.0 * av.alpha_prime**2 * av.cos_alpha
            - av.cos_alpha * av.sin_alpha**2)


def shell_residual(phi, params: CliffordParams):
    """``a'^2 - sin^2(a) (a^2 sin^2(a) - 1)``."""
    av = alpha_closed_form(phi, params)
    s2 = av.sin_alpha**2
    return av.alpha_prime**2 - s2 * (params.a**2 * s2 - 1.0)


@dataclass(frozen=True)
class ClosedFormTheta:
    """``theta(t) = alpha(t / k) / 2`` with analytic derivatives in ``t``."""

    params: CliffordParams

    def evaluate(self, t):
        k = self.params.k
        av = alpha_closed_form(np.asarray(t, dtype=float) / k, self.params)
        return 0.5 * av.alpha, 0.5 * av.alpha_prime / k, 0.5 * av.alpha_double_prime / k**2


def closed_chart(params: CliffordParams) -> SurfaceChart:
    return SurfaceChart(ClosedFormTheta(params), params.torus_params())


def closed_embedding(phi1, phi2, params: CliffordParams):
    """Point of the deformed torus, normalised onto the unit sphere."""
    phi1, phi2 = np.broadcast_arrays(np.asarray(phi1, float), np.asarray(phi2, float))
    e = params.e
    sp = np.sin(phi1 + phi2 - params.phi0)
    f = e * sp / np.sqrt(1.0 + e * e * sp * sp)
    r1 = np.sqrt(0.5 * (1.0 - f))
    r2 = np.sqrt(0.5 * (1.0 + f))
    return np.stack([r1 * np.cos(phi1), r1 * np.sin(phi1),
                     r2 * np.cos(phi2), r2 * np.sin(phi2)], axis=-1)


def _sample_torus(n_samples: int, seed: int):
    sampler = qmc.Halton(d=2, scramble=True, seed=seed)
    pts = 2.0 * np.pi * sampler.random(n_samples)
    return pts[:, 0], pts[:, 1]


def verify_minimal_closed_form(params: CliffordParams, n_samples: int = 10_000,
                               seed: int = 0) -> float:
    """Largest ``|minimality residual|`` at quasi-random points of the torus."""
    if n_samples < 1:
        raise DomainError("n_samples must be >= 1")
    p1, p2 = _sample_torus(n_samples, seed)
    return float(np.max(np.abs(minimality_residual(p1, p2, closed_chart(params)))))


@dataclass(frozen=True)
class IsometryData:
    u: np.ndarray
    v: np.ndarray
    w: np.ndarray
    J: np.ndarray


def _require_unit_normalisation(params: CliffordParams):
    if params.k != 1 or params.phi0 != 0.0:
        raise DomainError("the explicit isometry is built for k = l = 1, phi0 = 0")


def isometry_functions(phi, params: CliffordParams) -> IsometryData:
    """``u, v, w`` and the Jacobian ``J = d(phi~)/d(phi)`` of the flat chart.

    ``2g = J^T J`` with ``J = [[1+u, u], [v, 1+v]]`` splits into
    ``u - v = cos(alpha)`` and the quadratic

        w^2 + w + cos^2(alpha)/4 = alpha'^2 / 4

    for ``w = (u + v)/2``.  The root with ``w(e=0) = 0`` simplifies to
    ``w = (sqrt(1+e^2) / (1 + e^2 sin^2 phi) - 1) / 2``.
    """
    _require_unit_normalisation(params)
    av = alpha_closed_form(phi, params)
    disc = av.sin_alpha**2 + av.alpha_prime**2
    if np.any(disc < 0.0):
        raise NoRealRootError("negative discriminant in the isometry quadratic")
    w = 0.5 * (np.sqrt(disc) - 1.0)
    u = 0.5 * av.cos_alpha + w
    v = -0.5 * av.cos_alpha + w
    J = np.empty(np.shape(u) + (2, 2))
    J[..., 0, 0] = 1.0 + u
    J[..., 0, 1] = u
    J[..., 1, 0] = v
    J[..., 1, 1] = 1.0 + v
    return IsometryData(u, v, w, J)


def verify_isometry(params: CliffordParams, n_samples: int = 10_000, seed: int = 0) -> float:
    """Max entry of ``|2g - J^T J|`` over quasi-random samples."""
    _require_unit_normalisation(params)
    p1, p2 = _sample_torus(n_samples, seed)
    g = fundamental_forms(p1, p2, closed_chart(params)).g
    J = isometry_functions(p1 + p2, params).J
    JtJ = np.einsum("...ca,...cb->...ab", J, J)
    return float(np.max(np.abs(2.0 * g - JtJ)))


def _integral(fn, phi, tol):
    val, err = quad(fn, 0.0, phi, epsabs=tol, epsrel=tol, limit=200)
    if err > 10.0 * tol * max(1.0, abs(val)):
        raise ToleranceError(f"quadrature error estimate {err:.2e} exceeds tolerance")
    return val


def reparametrize_to_square(phi1, phi2, params: CliffordParams, tol: float = 1e-13):
    """Flat coordinates ``phi~^1 = phi1 + int_0^phi u``, ``phi~^2 = phi2 + int_0^phi v``.

    In these coordinates the metric is ``1/2`` times the identity.
    """
    _require_unit_normalisation(params)
    phi1, phi2 = np.broadcast_arrays(np.asarray(phi1, float), np.asarray(phi2, float))
    phi = (phi1 + phi2).ravel()

    def u_of(x):
        return float(isometry_functions(x, params).u)

    def v_of(x):
        return float(isometry_functions(x, params).v)

    iu = np.array([_integral(u_of, x, tol) for x in phi]).reshape(phi1.shape)
    iv = np.array([_integral(v_of, x, tol) for x in phi]).reshape(phi1.shape)
    return phi1 + iu, phi2 + iv
