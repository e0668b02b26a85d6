import math

import numpy as np
import pytest
import scipy.special as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from fd_helpers import pi_by_quadrature
from s3tori.elliptic import carlson_rc, carlson_rf, carlson_rj, elliptic_pi_incomplete
from s3tori.errors import DomainError

positive = st.floats(min_value=1e-3, max_value=1e3)


class TestCarlson:
    @settings(max_examples=200)
    @given(positive, positive, positive)
    def test_rf_matches_scipy(self, x, y, z):
        assert carlson_rf(x, y, z) == pytest.approx(sp.elliprf(x, y, z), rel=1e-14)

    @settings(max_examples=200)
    @given(positive, positive, positive, positive)
    def test_rj_matches_scipy(self, x, y, z, p):
        assert carlson_rj(x, y, z, p) == pytest.approx(sp.elliprj(x, y, z, p), rel=1e-13)

    @given(st.floats(0.0, 100.0), positive)
    def test_rc_matches_scipy(self, x, y):
        assert carlson_rc(x, y) == pytest.approx(sp.elliprc(x, y), rel=1e-14)

    def test_known_values(self):
        # R_F(0, 1, 2) and R_J(2, 3, 4, 5) from Carlson's published table
        assert carlson_rf(1.0, 2.0, 0.0) == pytest.approx(1.3110287771461, abs=1e-13)
        assert carlson_rj(2.0, 3.0, 4.0, 5.0) == pytest.approx(0.14297579667157, abs=1e-13)

    def test_homogeneity(self):
        x, y, z, p, lam = 0.3, 1.7, 2.2, 0.9, 7.5
        assert carlson_rf(lam * x, lam * y, lam * z) == pytest.approx(carlson_rf(x, y, z) / math.sqrt(lam), rel=1e-14)
        assert carlson_rj(lam * x, lam * y, lam * z, lam * p) == pytest.approx(
            carlson_rj(x, y, z, p) / lam**1.5, rel=1e-14)

    def test_domain(self):
        with pytest.raises(DomainError):
            carlson_rf(-1.0, 1.0, 1.0)
        with pytest.raises(DomainError):
            carlson_rf(0.0, 0.0, 1.0)
        with pytest.raises(DomainError):
            carlson_rj(1.0, 1.0, 1.0, 0.0)
        with pytest.raises(DomainError):
            carlson_rc(1.0, 0.0)


pi_quad = pi_by_quadrature


class TestLegendre:
    @pytest.mark.parametrize("phi", [0.1, 0.9, 1.5, 0.5 * math.pi])
    @pytest.mark.parametrize("n", [-5.0, -0.3, 0.0, 0.5, 0.95])
    @pytest.mark.parametrize("m", [0.0, 0.5, 0.99])
    def test_against_defining_integral(self, phi, n, m):
        assert elliptic_pi_incomplete(phi, n, math.sqrt(m)) == pytest.approx(pi_quad(phi, n, m), abs=1e-12)

    def test_n_zero_is_first_kind(self):
        for phi, m in [(0.7, 0.3), (1.2, 0.8)]:
            assert elliptic_pi_incomplete(phi, 0.0, math.sqrt(m)) == pytest.approx(
                sp.ellipkinc(phi, m), rel=1e-14)

    def test_complete_limit(self):
        assert elliptic_pi_incomplete(0.5 * math.pi, 0.0, math.sqrt(0.6)) == pytest.approx(sp.ellipk(0.6), rel=1e-14)

    def test_odd_and_quasi_periodic(self):
        n, k = 0.4, 0.6
        assert elliptic_pi_incomplete(-0.8, n, k) == pytest.approx(-elliptic_pi_incomplete(0.8, n, k), rel=1e-15)
        complete = elliptic_pi_incomplete(0.5 * math.pi, n, k)
        for j in (1, 2):
            assert elliptic_pi_incomplete(0.8 + j * math.pi, n, k) == pytest.approx(
                elliptic_pi_incomplete(0.8, n, k) + 2 * j * complete, rel=1e-14)
        assert elliptic_pi_incomplete(4.0, n, k) == pytest.approx(pi_quad(4.0, n, k * k), abs=1e-12)

    def test_zero_amplitude(self):
        assert elliptic_pi_incomplete(0.0, 0.3, 0.5) == 0.0

    def test_pole_rejected(self):
        with pytest.raises(DomainError):
            elliptic_pi_incomplete(1.2, 1.5, 0.2)
        with pytest.raises(DomainError):
            elliptic_pi_incomplete(4.0, 1.2, 0.2)
