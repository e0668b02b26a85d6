import functools
import math

import pytest

from s3tori.mechanics import TorusParams, integrate_theta

ACCEPTANCE_LINES: list[str] = []


@functools.lru_cache(maxsize=None)
def cached_profile(k, l, E, t_span):
    return integrate_theta(TorusParams(k, l, E), t_span)


def grid_profile(k, l, E):
    """Profile long enough for the full ``[0, 2pi]^2`` lattice."""
    return cached_profile(k, l, E, 2.0 * math.pi * (abs(k) + abs(l)) * 1.01 + 1e-3)


@pytest.fixture(scope="session")
def profile_01():
    return grid_profile(0, 1, 0.4)


@pytest.fixture(scope="session")
def profile_32():
    return grid_profile(3, 2, 0.2)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
