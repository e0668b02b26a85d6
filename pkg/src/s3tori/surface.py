"""Embedding, normal, fundamental forms and curvature of travelling-wave tori.

All functions broadcast over array-valued ``phi1``/``phi2``; matrix results
carry the two surface indices as trailing axes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Protocol

import numpy as np

from .errors import DegenerateError
from .mechanics import TorusParams


class ThetaSupplier(Protocol):
    def evaluate(self, t): ...


@dataclass(frozen=True)
class ConstantTheta:
    """``theta(t) = value`` for all ``t``; the Clifford torus for ``pi/4``."""

    value: float = 0.25 * np.pi

    def evaluate(self, t):
        t = np.asarray(t, dtype=float)
        z = np.zeros_like(t)
        return z + self.value, z, z.copy()


@dataclass(frozen=True)
class SurfaceChart:
    """A theta supplier attached to winding numbers ``(k, l)``.

    ``theta`` depends on the surface coordinates only through
    ``t = k*phi1 + l*phi2``, so ``d_a theta = n_a theta_dot`` and
    ``d_a d_b theta = n_a n_b theta_ddot`` with ``n = (k, l)``.
    """

    profile: ThetaSupplier
    params: TorusParams

    def theta_jet(self, phi1, phi2):
        """``theta``, its gradient ``(..., 2)`` and Hessian ``(..., 2, 2)``."""
        phi1, phi2 = np.broadcast_arrays(np.asarray(phi1, float), np.asarray(phi2, float))
        n = np.array([self.params.k, self.params.l], dtype=float)
        t = n[0] * phi1 + n[1] * phi2
        th, thd, thdd = self.profile.evaluate(t)
        grad = thd[..., None] * n
        hess = thdd[..., None, None] * np.outer(n, n)
        return th, grad, hess


@dataclass(frozen=True)
class FundamentalForms:
    g: np.ndarray
    h: np.ndarray
    normal: np.ndarray
    normal_length: np.ndarray


@dataclass(frozen=True)
class CurvatureReport:
    mean_curvature_residual: np.ndarray
    gaussian_R: np.ndarray
    det_g: np.ndarray
    det_h: np.ndarray
    ratio_h_over_g: np.ndarray


def embed_theta(phi1, phi2, theta):
    c, s = np.cos(theta), np.sin(theta)
    return np.stack([c * np.cos(phi1), c * np.sin(phi1),
                     s * np.cos(phi2), s * np.sin(phi2)], axis=-1)


def embed_point(phi1, phi2, chart: SurfaceChart):
    """``(cos th cos phi1, cos th sin phi1, sin th cos phi2, sin th sin phi2)``."""
    th, _, _ = chart.theta_jet(phi1, phi2)
    return embed_theta(phi1, phi2, th)


def _normal(phi1, phi2, th, grad):
    s, c = np.sin(th), np.cos(th)
    c1, s1 = np.cos(phi1), np.sin(phi1)
    c2, s2 = np.cos(phi2), np.sin(phi2)
    t1, t2 = grad[..., 0], grad[..., 1]
    sc = s * c
    m = np.stack([
        sc * (-s * c1) + s * s1 * t1,
        sc * (-s * s1) - s * c1 * t1,
        sc * (c * c2) + c * s2 * t2,
        sc * (c * s2) - c * c2 * t2,
    ], axis=-1)
    length = np.linalg.norm(m, axis=-1)
    if np.any(length < 1e-13):
        raise DegenerateError("normal vector vanishes (theta at a pole)")
    return m, length


def normal_vector(phi1, phi2, chart: SurfaceChart):
    """Unnormalised normal ``m``, orthogonal to both tangents and to ``x``."""
    phi1, phi2 = np.broadcast_arrays(np.asarray(phi1, float), np.asarray(phi2, float))
    th, grad, _ = chart.theta_jet(phi1, phi2)
    return _normal(phi1, phi2, th, grad)[0]


def _form_numerators(th, grad, hess):
    s, c = np.sin(th), np.cos(th)
    s2, c2, sc = s * s, c * c, s * c
    t1, t2 = grad[..., 0], grad[..., 1]
    g = np.empty(th.shape + (2, 2))
    g[..., 0, 0] = c2 + t1 * t1
    g[..., 1, 1] = s2 + t2 * t2
    g[..., 0, 1] = g[..., 1, 0] = t1 * t2
    hn = np.empty_like(g)
    hn[..., 0, 0] = s2 * c2 + sc * hess[..., 0, 0] + 2.0 * s2 * t1 * t1
    hn[..., 1, 1] = -s2 * c2 + sc * hess[..., 1, 1] - 2.0 * c2 * t2 * t2
    hn[..., 0, 1] = hn[..., 1, 0] = sc * hess[..., 0, 1] + (s2 - c2) * t1 * t2
    return g, hn


def fundamental_forms(phi1, phi2, chart: SurfaceChart) -> FundamentalForms:
    """First form ``g`` and second form ``h`` (w.r.t. the unit normal)."""
    phi1, phi2 = np.broadcast_arrays(np.asarray(phi1, float), np.asarray(phi2, float))
    th, grad, hess = chart.theta_jet(phi1, phi2)
    m, length = _normal(phi1, phi2, th, grad)
    g, hn = _form_numerators(th, grad, hess)
    return FundamentalForms(g, hn / length[..., None, None], m, length)


def minimality_lhs(theta, grad, hess):
    """Zero-mean-curvature condition for an arbitrary ``theta(phi1, phi2)``.

    The cofactor contraction of the ``h`` numerators with ``g``; equals
    ``det(g) tr(g^-1 h) |m|``.
    """
    g, hn = _form_numerators(theta, grad, hess)
    return (g[..., 1, 1] * hn[..., 0, 0] + g[..., 0, 0] * hn[..., 1, 1]
            - 2.0 * g[..., 0, 1] * hn[..., 0, 1])


def travelling_wave_lhs(theta, theta_dot, theta_ddot, k, l):
    """``minimality_lhs`` with ``d_a theta = n_a theta_dot`` substituted.

    Same polynomial, but the quartic and ``theta_dot^2 theta_ddot`` terms,
    which cancel identically, are dropped before evaluation.  This keeps
    roundoff proportional to the surviving terms when ``theta_dot`` is large.
    """
    s, c = np.sin(theta), np.cos(theta)
    s2, c2 = s * s, c * c
    k2, l2 = k * k, l * l
    kk = k2 * s2 + l2 * c2
    bracket = (l2 - k2) * s2 * c2 + 2.0 * s2 * s2 * k2 - 2.0 * c2 * c2 * l2
    return s * c * kk * theta_ddot + theta_dot**2 * bracket + s2 * c2 * (s2 - c2)


def minimality_residual(phi1, phi2, chart: SurfaceChart):
    """Zero-mean-curvature residual ``det(g) tr(g^-1 h) |m|``; zero iff minimal."""
    phi1, phi2 = np.broadcast_arrays(np.asarray(phi1, float), np.asarray(phi2, float))
    k, l = chart.params.k, chart.params.l
    th, thd, thdd = chart.profile.evaluate(k * phi1 + l * phi2)
    return travelling_wave_lhs(th, thd, thdd, k, l)


def curvature_report(phi1, phi2, chart: SurfaceChart) -> CurvatureReport:
    """Determinants, their ratio and ``R`` from the two shape operators.

    ``W = g^-1 h`` is the shape operator of the unit normal inside S^3 and
    ``W~ = -1`` comes from ``x . d_a d_b x = -g_ab``.  Then
    ``R = (tr W)^2 - tr W^2 + (tr W~)^2 - tr W~^2 = 2 (1 + det W)``, twice
    the intrinsic Gaussian curvature.
    """
    ff = fundamental_forms(phi1, phi2, chart)
    g, h = ff.g, ff.h
    W = np.linalg.solve(g, h)
    trW = np.trace(W, axis1=-2, axis2=-1)
    trW2 = np.einsum("...ab,...ba->...", W, W)
    Wt = -np.broadcast_to(np.eye(2), W.shape)
    trWt = np.trace(Wt, axis1=-2, axis2=-1)
    trWt2 = np.einsum("...ab,...ba->...", Wt, Wt)
    R = trW**2 - trW2 + trWt**2 - trWt2
    det_g = np.linalg.det(g)
    det_h = np.linalg.det(h)
    return CurvatureReport(minimality_residual(phi1, phi2, chart), R, det_g, det_h,
                           det_h / det_g)
