import math
from dataclasses import dataclass

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import grid_profile
from fd_helpers import derivative, embedding_jet, forms_by_differences
from s3tori.clifford import CliffordParams, closed_chart
from s3tori.errors import DegenerateError
from s3tori.mechanics import TorusParams
from s3tori.surface import (ConstantTheta, SurfaceChart, curvature_report, embed_point,
                            fundamental_forms, minimality_lhs, minimality_residual,
                            normal_vector, travelling_wave_lhs)

angles = st.floats(min_value=-10.0, max_value=10.0)
R2 = 1.0 / math.sqrt(2.0)


def clifford(k=0, l=1, value=math.pi / 4):
    return SurfaceChart(ConstantTheta(value), TorusParams(k, l, 0.5))


def random_points(n, seed=0):
    rng = np.random.default_rng(seed)
    return rng.uniform(0, 2 * math.pi, n), rng.uniform(0, 2 * math.pi, n)


@dataclass(frozen=True)
class LinearTheta:
    """theta(t) = t, which is not a solution."""

    def evaluate(self, t):
        t = np.asarray(t, dtype=float)
        return t, np.ones_like(t), np.zeros_like(t)


@pytest.fixture(scope="module")
def profile_charts():
    out = []
    for k, l, E in [(0, 1, 0.4), (3, 2, 0.2)]:
        out.append(SurfaceChart(grid_profile(k, l, E), TorusParams(k, l, E)))
    return out


class TestEmbedding:
    def test_origin(self):
        assert np.allclose(embed_point(0.0, 0.0, clifford()), [R2, 0.0, R2, 0.0], atol=1e-16)

    def test_substitution(self):
        x = embed_point(math.pi / 2, 0.0, clifford(value=math.pi / 3))
        assert np.allclose(x, [0.0, 0.5, math.sqrt(3) / 2, 0.0], atol=1e-16)

    @given(angles, angles, st.floats(min_value=0.01, max_value=1.56))
    def test_unit_norm(self, p1, p2, th):
        assert abs(np.linalg.norm(embed_point(p1, p2, clifford(value=th))) - 1.0) < 1e-14

    def test_unit_norm_on_profile(self, profile_charts):
        p1, p2 = random_points(5000)
        for chart in profile_charts:
            assert np.abs(np.linalg.norm(embed_point(p1, p2, chart), axis=-1) - 1).max() < 1e-12


class TestNormal:
    def test_clifford_normal(self):
        p1, p2 = 0.3, 1.1
        m = normal_vector(p1, p2, clifford())
        ref = 0.5 * R2 * np.array([-math.cos(p1), -math.sin(p1), math.cos(p2), math.sin(p2)])
        assert np.allclose(m, ref, atol=1e-16)

    @pytest.mark.parametrize("which", ["closed", "profile0", "profile1"])
    def test_orthogonal_to_tangents_and_position(self, which, profile_charts):
        chart = closed_chart(CliffordParams(1.0)) if which == "closed" else \
            profile_charts[int(which[-1])]
        p1, p2 = random_points(1000, 2)
        m = normal_vector(p1, p2, chart)
        x = embed_point(p1, p2, chart)
        d1, d2, *_ = embedding_jet(lambda a, b: embed_point(a, b, chart), p1, p2, 3e-3)
        for v in (x, d1, d2):
            assert np.abs(np.sum(m * v, axis=-1)).max() < 1e-11

    def test_length_squared_is_det_g(self, profile_charts):
        p1, p2 = random_points(1000, 3)
        for chart in profile_charts + [closed_chart(CliffordParams(5.0))]:
            ff = fundamental_forms(p1, p2, chart)
            assert np.allclose(ff.normal_length**2, np.linalg.det(ff.g), rtol=1e-12, atol=0)

    def test_degenerate_at_pole(self):
        with pytest.raises(DegenerateError):
            normal_vector(0.1, 0.2, clifford(value=0.0))


class TestForms:
    def test_clifford_forms(self):
        ff = fundamental_forms(*random_points(50), clifford())
        assert np.allclose(ff.g, 0.5 * np.eye(2), atol=1e-16)
        assert np.allclose(ff.h, np.diag([0.5, -0.5]), atol=1e-15)
        assert np.allclose(ff.normal_length, 0.5, atol=1e-16)

    @pytest.mark.parametrize("which", ["closed", "closed5", "profile0", "profile1"])
    def test_forms_match_differences(self, which, profile_charts):
        if which.startswith("closed"):
            chart = closed_chart(CliffordParams(5.0 if which == "closed5" else 1.0))
        else:
            chart = profile_charts[int(which[-1])]
        p1, p2 = random_points(1000, 4)
        ff = fundamental_forms(p1, p2, chart)
        unit = ff.normal / ff.normal_length[..., None]
        g, h, _ = forms_by_differences(lambda a, b: embed_point(a, b, chart), unit, p1, p2, 3e-3)
        assert np.abs(g - ff.g).max() < 1e-9
        assert np.abs(h - ff.h).max() < 1e-7

    def test_g_positive_definite(self, profile_charts):
        p1, p2 = random_points(2000, 5)
        for chart in profile_charts:
            assert np.all(np.linalg.eigvalsh(fundamental_forms(p1, p2, chart).g) > 0)

    def test_symmetric(self, profile_charts):
        ff = fundamental_forms(*random_points(100, 6), profile_charts[1])
        assert np.array_equal(ff.g, np.swapaxes(ff.g, -1, -2))
        assert np.array_equal(ff.h, np.swapaxes(ff.h, -1, -2))


class TestMinimality:
    def test_clifford_zero(self):
        # pi/4 is not exact in binary; s^2 - c^2 is one ulp off zero
        assert np.abs(minimality_residual(*random_points(100), clifford())).max() < 1e-15

    def test_integrated_profile(self, profile_charts):
        a = np.linspace(0, 2 * math.pi, 100)
        P1, P2 = np.meshgrid(a, a)
        assert np.abs(minimality_residual(P1, P2, profile_charts[0])).max() <= 1e-8

    def test_negative_control(self):
        chart = SurfaceChart(LinearTheta(), TorusParams(1, 0, 0.3))
        assert abs(minimality_residual(0.3, 1.0, chart)) > 1e-3

    def test_generic_and_reduced_forms_agree(self, profile_charts):
        p1, p2 = random_points(500, 7)
        for chart in profile_charts + [SurfaceChart(LinearTheta(), TorusParams(2, 1, 0.3))]:
            th, grad, hess = chart.theta_jet(p1, p2)
            _, thd, thdd = chart.profile.evaluate(chart.params.k * p1 + chart.params.l * p2)
            generic = minimality_lhs(th, grad, hess)
            reduced = travelling_wave_lhs(th, thd, thdd, chart.params.k, chart.params.l)
            assert np.allclose(generic, reduced, rtol=1e-10, atol=1e-12)

    def test_residual_is_trace_of_shape_operator(self):
        chart = SurfaceChart(LinearTheta(), TorusParams(2, 1, 0.3))
        p1, p2 = random_points(200, 8)
        p1, p2 = p1 * 0.05, p2 * 0.05 + 0.1
        ff = fundamental_forms(p1, p2, chart)
        trace = np.trace(np.linalg.solve(ff.g, ff.h), axis1=-2, axis2=-1)
        expected = np.linalg.det(ff.g) * trace * ff.normal_length
        assert np.allclose(minimality_residual(p1, p2, chart), expected, rtol=1e-10, atol=1e-13)


def brioschi(metric, p1, p2, h=1e-2):
    """Gaussian curvature from the first fundamental form alone."""
    E = lambda a, b: metric(a, b)[..., 0, 0]
    F = lambda a, b: metric(a, b)[..., 0, 1]
    G = lambda a, b: metric(a, b)[..., 1, 1]
    du = lambda f: (lambda a, b: derivative(lambda x: f(x, b), a, h))
    dv = lambda f: (lambda a, b: derivative(lambda y: f(a, y), b, h))
    Eu, Ev, Fu, Fv, Gu, Gv = (du(E)(p1, p2), dv(E)(p1, p2), du(F)(p1, p2),
                              dv(F)(p1, p2), du(G)(p1, p2), dv(G)(p1, p2))
    Evv, Guu, Fuv = dv(dv(E))(p1, p2), du(du(G))(p1, p2), du(dv(F))(p1, p2)
    e, f, g = E(p1, p2), F(p1, p2), G(p1, p2)
    m1 = np.stack([np.stack([-0.5 * Evv + Fuv - 0.5 * Guu, 0.5 * Eu, Fu - 0.5 * Ev], -1),
                   np.stack([Fv - 0.5 * Gu, e, f], -1),
                   np.stack([0.5 * Gv, f, g], -1)], -2)
    z = np.zeros_like(e)
    m2 = np.stack([np.stack([z, 0.5 * Ev, 0.5 * Gu], -1),
                   np.stack([0.5 * Ev, e, f], -1),
                   np.stack([0.5 * Gu, f, g], -1)], -2)
    return (np.linalg.det(m1) - np.linalg.det(m2)) / (e * g - f * f) ** 2


class TestCurvature:
    def test_clifford_report(self):
        rep = curvature_report(*random_points(20), clifford())
        assert np.allclose(rep.det_g, 0.25) and np.allclose(rep.det_h, -0.25)
        assert np.allclose(rep.ratio_h_over_g, -1.0, atol=1e-15)
        assert np.abs(rep.gaussian_R).max() < 1e-15

    @pytest.mark.parametrize("e", [0.5, 1.0, 5.0, 30.0])
    def test_deformed_family_is_flat(self, e):
        rep = curvature_report(*random_points(100, 9), closed_chart(CliffordParams(e)))
        assert np.abs(rep.ratio_h_over_g + 1.0).max() < 1e-9
        assert np.abs(rep.gaussian_R).max() < 1e-9

    def test_intrinsic_curvature_oracle(self, profile_charts):
        chart = profile_charts[0]
        p1, p2 = random_points(200, 10)
        p1 = p1 * 0.9 + 0.1
        p2 = p2 * 0.9 + 0.1
        rep = curvature_report(p1, p2, chart)
        K = brioschi(lambda a, b: fundamental_forms(a, b, chart).g, p1, p2)
        # R is the scalar curvature, twice the Gaussian curvature
        assert np.abs(0.5 * rep.gaussian_R - K).max() < 1e-5

    def test_non_k_equal_l_is_curved(self, profile_charts):
        rep = curvature_report(*random_points(200, 11), profile_charts[0])
        assert np.abs(rep.gaussian_R).max() > 0.1
