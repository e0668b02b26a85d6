"""Point-particle picture of the travelling-wave tori.

A surface ``theta(k*phi1 + l*phi2)`` is minimal exactly when ``theta(t)``
is a zero-energy orbit of

    theta_dot**2 + V_E(theta) = 0,
    V_E = c^2 s^2 / (k^2 s^2 + l^2 c^2) * (1 - c^2 s^2 / E^2),

with ``c = cos(theta)``, ``s = sin(theta)``.  This module holds the
potential, the Lagrangian/Hamiltonian pair, the equations of motion and a
dense integrator for ``theta(t)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp
from scipy.interpolate import BPoly

from .errors import DomainError, SingularityError, ToleranceError

# radicand of H may dip below zero by roundoff on the shell
_RADICAND_SLACK = 1e-12


@dataclass(frozen=True)
class TorusParams:
    """Winding integers ``(k, l)`` and mechanical energy ``E`` of one torus."""

    k: int
    l: int
    E: float

    def __post_init__(self):
        if int(self.k) != self.k or int(self.l) != self.l:
            raise DomainError(f"k and l must be integers, got {self.k!r}, {self.l!r}")
        object.__setattr__(self, "k", int(self.k))
        object.__setattr__(self, "l", int(self.l))
        if self.k == 0 and self.l == 0:
            raise DomainError("(k, l) = (0, 0) does not define a travelling wave")
        if not (0.0 < self.E <= 0.5):
            raise DomainError(f"energy must satisfy 0 < E <= 1/2, got {self.E!r}")

    @classmethod
    def from_e(cls, k: int, l: int, e: float) -> "TorusParams":
        """Build from the deformation parameter ``e = sinh(gamma)``."""
        return cls(k, l, energy_from_e(e))

    @property
    def a(self) -> float:
        """``a = 1/(2E) = cosh(gamma) >= 1``."""
        return 1.0 / (2.0 * self.E)

    @property
    def e(self) -> float:
        """``e = sinh(gamma) >= 0``; zero at the Clifford point."""
        return e_from_energy(self.E)

    @property
    def is_clifford_point(self) -> bool:
        return self.E == 0.5


def energy_from_e(e: float) -> float:
    return 0.5 / math.sqrt(1.0 + e * e)


def e_from_energy(E: float) -> float:
    if not (0.0 < E <= 0.5):
        raise DomainError(f"energy must satisfy 0 < E <= 1/2, got {E!r}")
    # sqrt(a^2 - 1) with a = 1/(2E), written to avoid cancellation near E = 1/2
    return math.sqrt((0.5 - E) * (0.5 + E)) / E


@dataclass(frozen=True)
class MechanicalState:
    theta: float
    theta_dot: float = 0.0
    pi_momentum: float = 0.0
    t: float = 0.0


def _kk(theta, params: TorusParams):
    s, c = np.sin(theta), np.cos(theta)
    return params.k**2 * s * s + params.l**2 * c * c


def potential(theta, params: TorusParams):
    """``V_E(theta)``; negative strictly inside the band, zero at turning points."""
    s, c = np.sin(theta), np.cos(theta)
    cs2 = c * c * s * s
    return cs2 / _kk(theta, params) * (1.0 - cs2 / params.E**2)


def potential_derivative(theta, params: TorusParams):
    """Analytic ``dV_E/dtheta``."""
    s, c = np.sin(theta), np.cos(theta)
    cs2 = c * c * s * s
    kk = _kk(theta, params)
    dcs2 = 2.0 * s * c * (c * c - s * s)
    dkk = 2.0 * s * c * (params.k**2 - params.l**2)
    E2 = params.E**2
    # V = cs2 (1 - cs2/E2) / kk
    num = cs2 * (1.0 - cs2 / E2)
    dnum = dcs2 * (1.0 - 2.0 * cs2 / E2)
    return (dnum * kk - num * dkk) / kk**2


def lagrangian(theta, theta_dot, params: TorusParams):
    s, c = np.sin(theta), np.cos(theta)
    return -np.sqrt(c * c * s * s + _kk(theta, params) * theta_dot**2)


def energy_of_velocity(theta, theta_dot, params: TorusParams):
    """Legendre transform of the Lagrangian written in velocity form."""
    s, c = np.sin(theta), np.cos(theta)
    cs2 = c * c * s * s
    return cs2 / np.sqrt(cs2 + _kk(theta, params) * theta_dot**2)


def canonical_momentum(theta, theta_dot, params: TorusParams):
    """``pi = dL/d(theta_dot) = -K theta_dot / sqrt(c^2 s^2 + K theta_dot^2)``."""
    s, c = np.sin(theta), np.cos(theta)
    kk = _kk(theta, params)
    denom = np.sqrt(c * c * s * s + kk * theta_dot**2)
    if np.any(denom == 0.0):
        raise DomainError("canonical momentum undefined where theta_dot = 0 and cs = 0")
    return -kk * theta_dot / denom


def _radicand(theta, pi_momentum, params):
    kk = _kk(theta, params)
    rad = 1.0 - pi_momentum**2 / kk
    if np.any(rad < -_RADICAND_SLACK):
        raise DomainError("pi^2 exceeds k^2 s^2 + l^2 c^2; Hamiltonian is not real")
    return np.maximum(rad, 0.0), kk


def hamiltonian(theta, pi_momentum, params: TorusParams):
    """``H = 1/2 sin(2 theta) sqrt(1 - pi^2 / (k^2 s^2 + l^2 c^2))``."""
    rad, _ = _radicand(theta, pi_momentum, params)
    return 0.5 * np.sin(2.0 * theta) * np.sqrt(rad)


def hamiltonian_gradient(theta, pi_momentum, params: TorusParams):
    """Return ``(dH/dtheta, dH/dpi)``."""
    rad, kk = _radicand(theta, pi_momentum, params)
    if np.any(rad <= 0.0):
        raise DomainError("Hamiltonian gradient is singular where the radicand vanishes")
    root = np.sqrt(rad)
    s2 = np.sin(2.0 * theta)
    dkk = (params.k**2 - params.l**2) * s2
    dH_dpi = -0.5 * s2 * (pi_momentum / kk) / root
    dH_dtheta = np.cos(2.0 * theta) * root + 0.25 * s2 * pi_momentum**2 * dkk / (kk**2 * root)
    return dH_dtheta, dH_dpi


def hamilton_rhs(state: MechanicalState, params: TorusParams) -> tuple[float, float]:
    """Canonical equations ``(dtheta/dt, dpi/dt) = (dH/dpi, -dH/dtheta)``."""
    dH_dtheta, dH_dpi = hamiltonian_gradient(state.theta, state.pi_momentum, params)
    return float(dH_dpi), float(-dH_dtheta)


def theta_ddot(theta, theta_dot, params: TorusParams):
    """Second-order equation of motion solved for ``theta_ddot``.

    This is the minimality condition for a travelling wave, and also the
    t-derivative of the zero-energy condition, so it conserves ``E``.
    """
    s, c = np.sin(theta), np.cos(theta)
    sc = s * c
    kk = _kk(theta, params)
    if np.any(np.abs(sc * kk) < 1e-300):
        raise SingularityError("equation of motion is singular at theta in {0, pi/2}")
    k2, l2 = params.k**2, params.l**2
    s2, c2 = s * s, c * c
    bracket = (l2 - k2) * s2 * c2 + 2.0 * s2 * s2 * k2 - 2.0 * c2 * c2 * l2
    return -(theta_dot**2 * bracket + s2 * c2 * (s2 - c2)) / (sc * kk)


def ode_rhs_second_order(state: MechanicalState, params: TorusParams) -> float:
    return float(theta_ddot(state.theta, state.theta_dot, params))


def turning_points(params: TorusParams) -> tuple[float, float]:
    """``(theta_minus, theta_plus)`` with ``sin^2(theta_pm) = v_pm``."""
    E = params.E
    if not (0.0 < E <= 0.5):
        raise DomainError(f"energy must satisfy 0 < E <= 1/2, got {E!r}")
    r = math.sqrt((0.5 - E) * (0.5 + E))
    theta_minus = math.asin(math.sqrt(0.5 - r))
    # theta_minus + theta_plus = pi/2 holds exactly in exact arithmetic
    return theta_minus, 0.5 * math.pi - theta_minus


def small_oscillation_half_period(params: TorusParams) -> float:
    """Half period of the linearised oscillation about ``theta = pi/4``."""
    return math.pi * math.sqrt(0.5 * (params.k**2 + params.l**2))


@dataclass(frozen=True)
class ThetaProfile:
    """Dense quintic-Hermite representation of ``theta(t)`` on ``[0, t_span]``.

    One piecewise quintic matches ``theta``, ``theta_dot`` and ``theta_ddot``
    at every node, so the three returned derivatives are mutually consistent.
    The orbit starts at the upper turning point with zero velocity, so it is
    even in ``t``; negative times are served by reflection.
    """

    params: TorusParams
    t: np.ndarray
    theta: np.ndarray
    theta_dot: np.ndarray
    theta_ddot: np.ndarray
    half_period: float
    max_energy_residual: float
    _poly: BPoly = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        for name in ("t", "theta", "theta_dot", "theta_ddot"):
            arr = np.asarray(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        jets = np.column_stack([self.theta, self.theta_dot, self.theta_ddot])
        object.__setattr__(self, "_poly", BPoly.from_derivatives(self.t, jets))

    @property
    def t_span(self) -> float:
        return float(self.t[-1])

    @property
    def period(self) -> float:
        return 2.0 * self.half_period

    def evaluate(self, t):
        """Return ``(theta, theta_dot, theta_ddot)`` at the times ``t``."""
        t = np.asarray(t, dtype=float)
        tau = np.abs(t)
        if np.any(tau > self.t_span * (1.0 + 1e-12)):
            raise DomainError(f"|t| = {tau.max():g} exceeds profile span {self.t_span:g}")
        tau = np.minimum(tau, self.t_span)
        sign = np.where(t < 0.0, -1.0, 1.0)
        th = self._poly(tau)
        thd = self._poly(tau, 1)
        thdd = self._poly(tau, 2)
        return th, sign * thd, thdd

    def energy_residual(self, t=None):
        """``theta_dot^2 + V_E(theta)`` at nodes (default) or at given times."""
        if t is None:
            th, thd = self.theta, self.theta_dot
        else:
            th, thd, _ = self.evaluate(t)
        return thd**2 + potential(th, self.params)


def _constant_profile(params: TorusParams, t_span: float) -> ThetaProfile:
    t = np.array([0.0, t_span])
    theta = np.full(2, 0.25 * math.pi)
    zero = np.zeros(2)
    return ThetaProfile(params, t, theta, zero, zero.copy(),
                        small_oscillation_half_period(params), 0.0)


def integrate_theta(params: TorusParams, t_span: float, tol: float = 1e-9, *,
                    rtol: float = 1e-10, atol: float = 1e-12,
                    node_spacing: float = 1e-2) -> ThetaProfile:
    """Integrate the zero-energy orbit from ``theta_plus`` over ``[0, t_span]``.

    The second-order equation is used so the start at a turning point is
    regular.  The DOP853 steps themselves, capped at ``node_spacing``, are the
    interpolation nodes; dense-output samples would carry step-to-step error
    jitter that the second derivative of the interpolant amplifies.  ``tol`` bounds the energy
    residual at the nodes; when the first pass misses it, ``rtol``/``atol``
    are tightened by 100x (down to 1e-13) before giving up.

    At ``E = 1/2`` the well is a single point and the exact constant orbit
    ``theta = pi/4`` is returned.
    """
    if t_span <= 0.0:
        raise DomainError("t_span must be positive")
    if tol <= 0.0:
        raise DomainError("tol must be positive")
    if params.is_clifford_point:
        return _constant_profile(params, t_span)
    while True:
        try:
            return _integrate(params, t_span, tol, rtol, atol, node_spacing)
        except ToleranceError:
            if rtol <= 1e-13:
                raise
            rtol, atol = max(rtol / 100.0, 1e-13), max(atol / 100.0, 1e-16)


def _integrate(params, t_span, tol, rtol, atol, node_spacing):
    _, theta_plus = turning_points(params)

    k2, l2 = params.k**2, params.l**2

    def rhs(_t, y):
        # scalar transcription of theta_ddot; the numpy version dominates run time here
        th, thd = y
        s, c = math.sin(th), math.cos(th)
        s2, c2 = s * s, c * c
        bracket = (l2 - k2) * s2 * c2 + 2.0 * s2 * s2 * k2 - 2.0 * c2 * c2 * l2
        return [thd, -(thd * thd * bracket + s2 * c2 * (s2 - c2)) / (s * c * (k2 * s2 + l2 * c2))]

    def returns_to_minus(_t, y):
        return y[1]

    returns_to_minus.direction = 1.0

    max_step = node_spacing * min(1.0, 4.0 * params.E)
    sol = solve_ivp(rhs, (0.0, t_span), [theta_plus, 0.0], method="DOP853", rtol=rtol,
                    atol=atol, max_step=max_step, events=returns_to_minus)
    if sol.status < 0:
        raise ToleranceError(f"integrator failed: {sol.message}")
    if sol.t_events[0].size:
        half_period = float(sol.t_events[0][0])
    else:
        # continue past t_span only to locate the first return
        more = solve_ivp(rhs, (t_span, t_span + 2.0 * small_oscillation_half_period(params)),
                         sol.y[:, -1], method="DOP853", rtol=rtol, atol=atol,
                         events=returns_to_minus)
        if not more.t_events[0].size:
            raise ToleranceError("no return to the lower turning point within two periods")
        half_period = float(more.t_events[0][0])
    # a sliver of a last step would make the interpolant ill-conditioned
    keep = np.append(np.diff(sol.t) > 1e-6 * max_step, True)
    keep[0] = True
    t_nodes, y = sol.t[keep], sol.y[:, keep]
    theta_n, dot_n = y
    ddot_n = theta_ddot(theta_n, dot_n, params)
    residual = float(np.max(np.abs(dot_n**2 + potential(theta_n, params))))
    if residual > tol:
        raise ToleranceError(f"energy residual {residual:.3e} exceeds tol {tol:.3e}")
    return ThetaProfile(params, t_nodes, theta_n, dot_n, ddot_n, half_period, residual)


def integrate_hamilton(params: TorusParams, t_eval, theta0: float, pi0: float, *,
                       rtol: float = 1e-12, atol: float = 1e-13):
    """Integrate the canonical equations; returns ``(theta, pi)`` at ``t_eval``."""
    t_eval = np.asarray(t_eval, dtype=float)

    def rhs(_t, y):
        dH_dtheta, dH_dpi = hamiltonian_gradient(y[0], y[1], params)
        return [dH_dpi, -dH_dtheta]

    sol = solve_ivp(rhs, (0.0, float(t_eval[-1])), [theta0, pi0], method="DOP853",
                    rtol=rtol, atol=atol, t_eval=t_eval)
    if sol.status < 0:
        raise ToleranceError(f"integrator failed: {sol.message}")
    return sol.y[0], sol.y[1]
