from __future__ import annotations

import math
import statistics

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chaotic_sigmoid.activation import DriverConfig
from chaotic_sigmoid.chaos import ChaoticMap, iterate_map
from chaotic_sigmoid.diagnostics import (
    autocorrelation,
    diagnose,
    sigma_sweep,
    std_dev,
    through_origin_fit,
)
from chaotic_sigmoid.errors import DiagnosticsError, ShapeError, ZeroVarianceError


def brute_autocorrelation(x, max_lag):
    n = len(x)
    mean = sum(x) / n
    d = [v - mean for v in x]
    denom = sum(v * v for v in d)
    return [sum(d[t] * d[t + k] for t in range(n - k)) / denom for k in range(max_lag + 1)]


def sigmoid_sigma_quadrature(phi_min, phi_max, z=1.0, m=200_000):
    """sigma of S(z, phi) with phi driven by the r=4 logistic map, from its
    invariant density: alpha = (1 - cos theta) / 2, theta uniform on (0, pi)."""
    theta = (np.arange(m) + 0.5) * math.pi / m
    alpha = 0.5 * (1 - np.cos(theta))
    s = 1 / (1 + np.exp(-(phi_min + alpha * (phi_max - phi_min)) * z))
    return float(np.sqrt(np.mean(s * s) - np.mean(s) ** 2))


class TestStdDev:
    def test_values(self):
        assert std_dev([0.5, 0.5, 0.5]) == 0.0
        assert std_dev([0, 1]) == 0.5

    def test_too_short(self):
        with pytest.raises(ShapeError):
            std_dev([1.0])

    @settings(max_examples=100)
    @given(st.lists(st.floats(-1e6, 1e6), min_size=2, max_size=200), st.floats(-1e9, 1e9))
    def test_two_pass_reference(self, xs, offset):
        xs = [x + offset for x in xs]
        ref = statistics.pstdev(xs)
        assert std_dev(xs) == pytest.approx(ref, rel=1e-12, abs=1e-12 * max(1.0, abs(offset)))

    def test_large_offset_no_cancellation(self):
        x = 1e9 + np.array([0.0, 1.0] * 50)
        assert std_dev(x) == pytest.approx(0.5, rel=1e-12)


class TestAutocorrelation:
    def test_alternating(self):
        rho = autocorrelation([1.0, 0.0] * 500, 1)
        assert rho[1] == pytest.approx(-1.0, abs=0.01)

    def test_lag_zero_exact(self):
        rho = autocorrelation(np.random.default_rng(1).normal(size=300), 5)
        assert rho[0] == 1.0

    def test_brute_force(self):
        x = np.random.default_rng(2).uniform(size=200).tolist()
        np.testing.assert_allclose(autocorrelation(x, 15), brute_autocorrelation(x, 15), atol=1e-12)

    def test_logistic_orbit_decorrelated(self):
        s = iterate_map(ChaoticMap.logistic(4.0), 0.1, 1000, 100_000).samples
        assert np.all(np.abs(autocorrelation(s, 20)[1:]) < 0.02)

    def test_errors(self):
        with pytest.raises(ZeroVarianceError):
            autocorrelation([0.3] * 10, 2)
        with pytest.raises(ShapeError):
            autocorrelation([0.0, 1.0, 0.5], 3)

    @settings(max_examples=100)
    @given(st.lists(st.floats(-1e3, 1e3), min_size=5, max_size=100))
    def test_bounded(self, xs):
        try:
            rho = autocorrelation(xs, len(xs) - 1)
        except ZeroVarianceError:
            return
        assert rho[0] == 1.0
        assert np.all(np.abs(rho) <= 1 + 1e-9)


class TestSigmaSweep:
    def test_anchor_values_against_quadrature(self):
        rows = sigma_sweep([0.4, 0.2], n=100_000)
        assert [r.delta_phi for r in rows] == [0.2, 0.4]
        assert rows[0].sigma == pytest.approx(sigmoid_sigma_quadrature(0.9, 1.1), rel=0.03)
        assert rows[1].sigma == pytest.approx(sigmoid_sigma_quadrature(0.8, 1.2), rel=0.03)
        assert rows[0].sigma == pytest.approx(0.013, abs=0.002)
        assert rows[1].sigma == pytest.approx(0.026, abs=0.004)

    def test_vanishing_width(self):
        (row,) = sigma_sweep([1e-6], n=5000)
        assert row.sigma < 1e-6

    def test_proportional(self):
        deltas = [round(0.1 * k, 1) for k in range(1, 11)]
        rows = sigma_sweep(deltas, n=20_000)
        _, r2 = through_origin_fit([r.delta_phi for r in rows], [r.sigma for r in rows])
        assert r2 > 0.98
        assert rows[3].sigma / rows[1].sigma == pytest.approx(2.0, abs=0.15)

    def test_keeps_template(self):
        tpl = DriverConfig(ChaoticMap.logistic(3.9), 0.2, 0.095, 0.975)
        (row,) = sigma_sweep([0.2], driver=tpl, n=2000)
        assert row.phi_center == 1.0 and row.sigma > 0


class TestDiagnose:
    def test_with_map(self):
        m = ChaoticMap.logistic(4.0)
        s = iterate_map(m, 0.1, 1000, 100_000).samples
        rep = diagnose(s, m, 10)
        assert rep.lyapunov == pytest.approx(math.log(2), abs=0.01)
        assert rep.n_samples == 100_000
        assert len(rep.autocorrelation) == 11

    def test_without_map(self):
        rep = diagnose(np.sin(np.arange(200.0)), None, 5)
        assert rep.lyapunov is None
        assert rep.std_dev > 0 and rep.autocorrelation[0] == 1.0

    def test_json_fields(self):
        d = diagnose(np.arange(20.0), None, 3).to_dict()
        assert list(d) == ["lyapunov", "std_dev", "mean", "autocorrelation", "n_samples"]

    def test_constant_series(self):
        with pytest.raises(DiagnosticsError) as info:
            diagnose([0.5] * 10, None, 3)
        assert any(isinstance(e, ZeroVarianceError) for e in info.value.errors)

    def test_collects_all_failures(self):
        with pytest.raises(DiagnosticsError) as info:
            diagnose([0.5] * 10, ChaoticMap.logistic(2.0), 3)
        assert len(info.value.errors) == 2

    def test_pure(self):
        x = np.random.default_rng(5).uniform(size=500)
        m = ChaoticMap.logistic(3.9)
        assert diagnose(x, m, 8).to_dict() == diagnose(x, m, 8).to_dict()
