"""Carlson symmetric integrals and Legendre's third-kind integral.

Duplication algorithms after B. C. Carlson, "Numerical computation of real
or complex elliptic integrals", Numer. Algorithms 10 (1995), restricted to
real arguments.
"""

from __future__ import annotations

import math

from .errors import DomainError

_R = 1e-16
_MAX_ITER = 100


def carlson_rc(x: float, y: float) -> float:
    """``R_C(x, y) = 1/2 int_0^inf (t + x)^-1/2 (t + y)^-1 dt`` for ``x >= 0, y > 0``."""
    if x < 0.0 or y <= 0.0:
        raise DomainError(f"R_C needs x >= 0 and y > 0, got ({x}, {y})")
    if x == y:
        return 1.0 / math.sqrt(x)
    if x < y:
        return math.acos(math.sqrt(x / y)) / math.sqrt(y - x)
    return math.acosh(math.sqrt(x / y)) / math.sqrt(x - y)


def _rc_one_plus(e: float) -> float:
    """``R_C(1, 1 + e)``, series-accurate for small ``|e|``."""
    if abs(e) < 1e-4:
        return 1.0 - e / 3.0 + e * e / 5.0 - e**3 / 7.0
    if e > 0.0:
        r = math.sqrt(e)
        return math.atan(r) / r
    r = math.sqrt(-e)
    return math.atanh(r) / r


def carlson_rf(x: float, y: float, z: float) -> float:
    """``R_F(x, y, z)`` for nonnegative arguments, at most one zero."""
    if min(x, y, z) < 0.0 or (x == 0.0) + (y == 0.0) + (z == 0.0) > 1:
        raise DomainError(f"R_F needs nonnegative arguments, at most one zero: {(x, y, z)}")
    a0 = (x + y + z) / 3.0
    dx, dy = a0 - x, a0 - y
    q = (3.0 * _R) ** (-1.0 / 6.0) * max(abs(a0 - x), abs(a0 - y), abs(a0 - z))
    a, scale = a0, 1.0
    for _ in range(_MAX_ITER):
        if scale * q < abs(a):
            break
        sx, sy, sz = math.sqrt(x), math.sqrt(y), math.sqrt(z)
        lam = sx * sy + sx * sz + sy * sz
        a = 0.25 * (a + lam)
        x, y, z = 0.25 * (x + lam), 0.25 * (y + lam), 0.25 * (z + lam)
        scale *= 0.25
    # a_n - x_n == 4^-n (a_0 - x_0) exactly; avoids cancellation
    X = scale * dx / a
    Y = scale * dy / a
    Z = -X - Y
    e2 = X * Y - Z * Z
    e3 = X * Y * Z
    return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) / math.sqrt(a)


def carlson_rj(x: float, y: float, z: float, p: float) -> float:
    """``R_J(x, y, z, p)`` for ``x, y, z >= 0`` (at most one zero) and ``p > 0``."""
    if min(x, y, z) < 0.0 or p <= 0.0 or (x == 0.0) + (y == 0.0) + (z == 0.0) > 1:
        raise DomainError(f"R_J argument outside the real domain: {(x, y, z, p)}")
    a0 = (x + y + z + 2.0 * p) / 5.0
    dx, dy, dz = a0 - x, a0 - y, a0 - z
    delta = (p - x) * (p - y) * (p - z)
    q = (0.25 * _R) ** (-1.0 / 6.0) * max(abs(a0 - x), abs(a0 - y), abs(a0 - z), abs(a0 - p))
    a, scale, total = a0, 1.0, 0.0
    for _ in range(_MAX_ITER):
        if scale * q < abs(a):
            break
        sx, sy, sz, sp = math.sqrt(x), math.sqrt(y), math.sqrt(z), math.sqrt(p)
        lam = sx * sy + sx * sz + sy * sz
        d = (sp + sx) * (sp + sy) * (sp + sz)
        e = scale**3 * delta / (d * d)
        total += scale * _rc_one_plus(e) / d
        a = 0.25 * (a + lam)
        x, y, z, p = (0.25 * (x + lam), 0.25 * (y + lam),
                      0.25 * (z + lam), 0.25 * (p + lam))
        scale *= 0.25
    X = scale * dx / a
    Y = scale * dy / a
    Z = scale * dz / a
    P = -0.5 * (X + Y + Z)
    e2 = X * Y + X * Z + Y * Z - 3.0 * P * P
    e3 = X * Y * Z + 2.0 * e2 * P + 4.0 * P**3
    e4 = (2.0 * X * Y * Z + e2 * P + 3.0 * P**3) * P
    e5 = X * Y * Z * P * P
    series = (1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0
              - 3.0 * e4 / 22.0 - 9.0 * e2 * e3 / 52.0 + 3.0 * e5 / 26.0)
    return scale * series / (a * math.sqrt(a)) + 6.0 * total


def _pi_reduced(phi: float, n: float, m: float) -> float:
    s, c = math.sin(phi), math.cos(phi)
    s2 = s * s
    y = 1.0 - m * s2
    if s == 0.0:
        return 0.0
    rf = carlson_rf(c * c, y, 1.0)
    rj = carlson_rj(c * c, y, 1.0, 1.0 - n * s2)
    return s * rf + n * s * s2 * rj / 3.0


def elliptic_pi_incomplete(amplitude: float, characteristic: float, modulus: float) -> float:
    """``Pi(amplitude; n, k) = int_0^amp dt / ((1 - n sin^2 t) sqrt(1 - k^2 sin^2 t))``.

    ``modulus`` is ``k``; the parameter is ``m = k^2``.  Amplitudes beyond
    ``[-pi/2, pi/2]`` use quasi-periodicity, which needs ``n < 1`` and ``m < 1``.
    """
    n, m = characteristic, modulus * modulus
    phi = amplitude
    if abs(phi) <= 0.5 * math.pi:
        s2 = math.sin(phi) ** 2
        if n * s2 >= 1.0:
            raise DomainError("characteristic * sin^2(amplitude) >= 1 crosses the pole")
        if m * s2 > 1.0:
            raise DomainError("modulus^2 * sin^2(amplitude) > 1")
        return _pi_reduced(phi, n, m)
    if n >= 1.0 or m >= 1.0:
        raise DomainError("amplitudes beyond pi/2 need characteristic < 1 and modulus < 1")
    j = round(phi / math.pi)
    rest = phi - j * math.pi
    return 2.0 * j * _pi_reduced(0.5 * math.pi, n, m) + _pi_reduced(rest, n, m)
