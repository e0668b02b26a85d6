"""Pointwise isothermal decomposition ``g = rho^2 J^T J`` for general (k, l).

On the energy shell ``theta_dot^2 = Y(theta) = -V_E(theta)`` the metric is

    g = diag(c^2, s^2) + Y n n^T,      n = (k, l),

and ``J = 1 + (u, v)^T n``, i.e. ``[[1 + k u, l u], [k v, 1 + l v]]``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NoRealRootError
from .mechanics import ThetaProfile, TorusParams, potential


@dataclass(frozen=True)
class IsothermalSolution:
    rho_squared: np.ndarray
    u: np.ndarray
    v: np.ndarray
    Y: np.ndarray
    n: tuple[int, int] = (1, 1)

    @property
    def J(self):
        return jacobian(self.u, self.v, self.n)


def conformal_factor(theta, k: int, l: int):
    """``rho^2 = (k^2 sin^2 + l^2 cos^2) / (k^2 + l^2)``."""
    if k == 0 and l == 0:
        raise DomainError("(k, l) = (0, 0) has no conformal factor")
    s, c = np.sin(theta), np.cos(theta)
    return (k * k * s * s + l * l * c * c) / (k * k + l * l)


def shell_speed_squared(theta, params: TorusParams):
    """``Y(theta) = -V_E(theta)``, the squared velocity on the zero-energy shell."""
    return -potential(theta, params)


def shell_metric(theta, params: TorusParams):
    """``diag(c^2, s^2) + Y(theta) n n^T``."""
    theta = np.asarray(theta, dtype=float)
    s, c = np.sin(theta), np.cos(theta)
    Y = shell_speed_squared(theta, params)
    k, l = params.k, params.l
    g = np.empty(theta.shape + (2, 2))
    g[..., 0, 0] = c * c + k * k * Y
    g[..., 1, 1] = s * s + l * l * Y
    g[..., 0, 1] = g[..., 1, 0] = k * l * Y
    return g


def jacobian(u, v, n):
    k, l = n
    u, v = np.broadcast_arrays(np.asarray(u, float), np.asarray(v, float))
    J = np.empty(u.shape + (2, 2))
    J[..., 0, 0] = 1.0 + k * u
    J[..., 0, 1] = l * u
    J[..., 1, 0] = k * v
    J[..., 1, 1] = 1.0 + l * v
    return J


def solve_uv(theta, params: TorusParams) -> IsothermalSolution:
    """Solve ``g = rho^2 J^T J`` for ``(u, v)`` at the angle(s) ``theta``.

    Write ``(u, v) = alpha n + beta n_perp`` with ``n_perp = (-l, k)`` and
    ``N = k^2 + l^2``, and let ``G = g / rho^2 - 1``.  The ``n_perp n_perp``
    component of ``G`` vanishes once ``rho^2`` is chosen as above.  The mixed
    component is the linear relation ``l u - k v = -N beta`` with
    ``beta = n.G.n_perp / N^2``.  The ``n n`` component is the quadratic

        N alpha^2 + 2 alpha + N beta^2 - n.G.n / N^2 = 0,

    whose root vanishing at ``G = 0`` is taken.
    """
    theta = np.asarray(theta, dtype=float)
    k, l = params.k, params.l
    N = float(k * k + l * l)
    rho2 = conformal_factor(theta, k, l)
    g = shell_metric(theta, params)
    G = g / rho2[..., None, None] - np.eye(2)
    n = np.array([k, l], dtype=float)
    n_perp = np.array([-l, k], dtype=float)
    beta = np.einsum("a,...ab,b->...", n, G, n_perp) / N**2
    gamma = np.einsum("a,...ab,b->...", n, G, n) / N**2
    disc = 1.0 - N * (N * beta**2 - gamma)
    if np.any(disc < 0.0):
        raise NoRealRootError(f"isothermal quadratic has discriminant {np.min(disc):.3e}")
    # (-1 + sqrt(disc)) / N, rationalised against cancellation near disc = 1
    alpha = (N * gamma - N * N * beta**2) / (1.0 + np.sqrt(disc)) / N
    u = alpha * k - beta * l
    v = alpha * l + beta * k
    return IsothermalSolution(rho2, u, v, shell_speed_squared(theta, params), (k, l))


def residuals(sol: IsothermalSolution, theta, params: TorusParams):
    """The three component equations of ``g - rho^2 J^T J`` (11, 22, 12)."""
    g = shell_metric(theta, params)
    J = jacobian(sol.u, sol.v, (params.k, params.l))
    D = g - sol.rho_squared[..., None, None] * np.einsum("...ca,...cb->...ab", J, J)
    return D[..., 0, 0], D[..., 1, 1], D[..., 0, 1]


def verify_isothermal_metric(params: TorusParams, profile: ThetaProfile,
                             n_samples: int = 1000, seed: int = 0) -> float:
    """Max entry of ``|g - rho^2 J^T J|`` at random times along ``profile``."""
    rng = np.random.default_rng(seed)
    t = rng.uniform(0.0, profile.t_span, n_samples)
    theta, _, _ = profile.evaluate(t)
    sol = solve_uv(theta, params)
    return float(max(np.max(np.abs(r)) for r in residuals(sol, theta, params)))
