import math

import numpy as np
import pytest

from dpencil.errors import DegenerateNormalError, InvalidMarchingScaleError
from dpencil.expr import parse_expression
from dpencil.frenet import frenet_at
from dpencil.pencil import (
    GeneralForm,
    MarchingScale,
    SurfacePencil,
    marching_values,
    surface_normal,
    surface_partials,
    surface_point,
)

from conftest import preset_config, preset_pencil

SQRT3_2 = math.sqrt(3.0) / 2.0


def general_scale(u, v, w, param="s", controls=(1.0, 1.0, 1.0), t0=0.0):
    names = [param, "t"]
    form = GeneralForm(
        u=parse_expression(u, names),
        v=parse_expression(v, names),
        w=parse_expression(w, names),
        controls=controls,
    )
    return MarchingScale(form=form, param=param, t0=t0)


class TestMarchingValues:
    def test_example1_at_base(self, ex1):
        mv = marching_values(ex1.marching, 1.3, 0.0)
        assert (mv.u, mv.v, mv.w) == (0.0, 0.0, 0.0)
        assert (mv.u_s, mv.v_s, mv.w_s) == (0.0, 0.0, 0.0)
        assert mv.u_t == pytest.approx(1.0, abs=1e-15)
        assert mv.v_t == pytest.approx(SQRT3_2, abs=1e-15)
        assert mv.w_t == pytest.approx(0.5, abs=1e-15)

    def test_example1_linear_in_t(self, ex1):
        mv = marching_values(ex1.marching, -0.4, 2.0)
        assert mv.u == pytest.approx(2.0, abs=1e-15)
        assert mv.v == pytest.approx(math.sqrt(3.0), abs=1e-15)
        assert mv.w == pytest.approx(1.0, abs=1e-15)

    def test_controls_scale_components(self):
        cfg = preset_config("example1b")  # controls (1/5, 1/3, 1)
        mv = marching_values(cfg.explicit_marching(), 0.7, 2.0)
        assert mv.u == pytest.approx(2.0 / 5.0, abs=1e-15)
        assert mv.v == pytest.approx(math.sqrt(3.0) / 3.0, abs=1e-15)
        assert mv.w == pytest.approx(1.0, abs=1e-15)

    def test_general_form_partials(self):
        ms = general_scale("s*t", "t^2", "t")
        mv = marching_values(ms, 2.0, 3.0)
        assert (mv.u, mv.v, mv.w) == (6.0, 9.0, 3.0)
        assert (mv.u_s, mv.v_s, mv.w_s) == (3.0, 0.0, 0.0)
        assert (mv.u_t, mv.v_t, mv.w_t) == (2.0, 6.0, 1.0)


class TestSurfacePoint:
    def test_reproduces_curve_at_t0(self, ex1, ex2, ex3):
        for pencil in (ex1, ex2, ex3):
            lo, hi = pencil.curve.domain
            for s in np.linspace(lo + 0.01, hi - 0.01, 50):
                gap = np.linalg.norm(
                    surface_point(pencil, float(s), 0.0) - pencil.curve.point(float(s))
                )
                assert gap <= 1e-12

    def test_example1_hand_value(self, ex1):
        # P(0, 1) = r(0) + 1*T + (sqrt3/2) N + (1/2) B with frame
        # T=(0,1,0), N=(-1,0,0), B=(0,0,1).
        got = surface_point(ex1, 0.0, 1.0)
        assert np.allclose(got, [1.0 - SQRT3_2, 1.0, 0.5], atol=1e-15)

    def test_zero_scale_collapses_to_curve(self, ex1):
        pencil = SurfacePencil(ex1.curve, general_scale("0", "0", "0"), (0.0, 1.0))
        assert np.allclose(surface_point(pencil, 0.7, 0.9), pencil.curve.point(0.7))
        with pytest.raises(DegenerateNormalError):
            surface_normal(pencil, 0.7, 0.9)


class TestSurfacePartials:
    def test_example1_at_base(self, ex1):
        d_s, d_t = surface_partials(ex1, 0.0, 0.0)
        app = frenet_at(ex1.curve, 0.0)
        assert np.allclose(d_s, app.T, atol=1e-14)
        expected_dt = app.T + SQRT3_2 * app.N + 0.5 * app.B
        assert np.allclose(d_t, expected_dt, atol=1e-14)

    def test_speed_factor_at_base(self, ex3):
        for q in (0.5, 1.0, 2.5):
            d_s, _ = surface_partials(ex3, q, 0.0)
            app = frenet_at(ex3.curve, q)
            assert np.allclose(d_s, app.rho * app.T, atol=1e-12)

    def test_matches_finite_differences(self, rng, ex1, ex2, ex3):
        h = 1e-5
        for pencil in (ex1, ex2, ex3):
            lo, hi = pencil.curve.domain
            t_lo, t_hi = pencil.t_range
            count = 0
            while count < 34:
                s = float(rng.uniform(lo + 0.1, hi - 0.1))
                t = float(rng.uniform(t_lo + 0.01, t_hi - 0.01))
                try:
                    d_s, d_t = surface_partials(pencil, s, t)
                    fd_s = (surface_point(pencil, s + h, t)
                            - surface_point(pencil, s - h, t)) / (2 * h)
                    fd_t = (surface_point(pencil, s, t + h)
                            - surface_point(pencil, s, t - h)) / (2 * h)
                except Exception:
                    continue
                count += 1
                scale_s = max(1.0, float(np.linalg.norm(d_s)))
                scale_t = max(1.0, float(np.linalg.norm(d_t)))
                assert np.max(np.abs(d_s - fd_s)) <= 1e-6 * scale_s
                assert np.max(np.abs(d_t - fd_t)) <= 1e-6 * scale_t


class TestSurfaceNormal:
    def test_example1_at_base(self, ex1):
        got = surface_normal(ex1, 0.0, 0.0)
        assert np.allclose(got, [0.5, 0.0, SQRT3_2], atol=1e-14)

    def test_tangency_along_curve(self, ex1, ex2, ex3, ex4):
        for pencil in (ex1, ex2, ex3, ex4):
            lo, hi = pencil.curve.domain
            for s in np.linspace(lo + 0.05, hi - 0.05, 60):
                s = float(s)
                try:
                    app = pencil.frame(s)
                    n = pencil.normal(s, 0.0, app)
                except Exception:
                    continue
                assert abs(float(np.dot(n, app.T))) <= 1e-10

    def test_normal_components_unit(self, ex1, ex2, ex3):
        for pencil in (ex1, ex2, ex3):
            lo, hi = pencil.curve.domain
            for s in np.linspace(lo + 0.05, hi - 0.05, 40):
                s = float(s)
                try:
                    app = pencil.frame(s)
                    n = pencil.normal(s, 0.0, app)
                except Exception:
                    continue
                phi2 = float(np.dot(n, app.N))
                phi3 = float(np.dot(n, app.B))
                assert abs(phi2 * phi2 + phi3 * phi3 - 1.0) <= 1e-10


class TestConstruction:
    def test_isoparametric_requirement_enforced(self, ex1):
        with pytest.raises(InvalidMarchingScaleError):
            SurfacePencil(ex1.curve, general_scale("t + 1", "0", "t"), (0.0, 1.0))

    def test_t0_must_lie_in_range(self, ex1):
        with pytest.raises(InvalidMarchingScaleError):
            SurfacePencil(ex1.curve, general_scale("t", "t", "t", t0=2.0), (0.0, 1.0))

    def test_param_mismatch(self, ex1):
        with pytest.raises(InvalidMarchingScaleError):
            SurfacePencil(ex1.curve, general_scale("t", "t", "t", param="q"), (0.0, 1.0))

    def test_nonzero_t0(self, ex1):
        ms = general_scale("t - 1", "(t - 1)^2", "0", t0=1.0)
        pencil = SurfacePencil(ex1.curve, ms, (0.0, 2.0))
        assert np.allclose(
            surface_point(pencil, 0.3, 1.0), pencil.curve.point(0.3), atol=1e-15
        )
