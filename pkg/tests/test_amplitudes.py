"""Unit tests for the closed-form single-chain amplitudes."""

import numpy as np
import pytest

from entransfer.amplitudes import (
    SystemParams,
    amplitudes_exact,
    amplitudes_strong,
    amplitudes_weak,
    exact_squares,
)


def params_geff(geff, kappa=1.0, Delta=None):
    return SystemParams.from_geff(geff, kappa=kappa, Delta=Delta)


class TestSystemParams:
    def test_derived_quantities(self):
        p = SystemParams(g=50.0, Omega=50.0, Delta=500.0, kappa=1.0)
        assert p.g_eff == pytest.approx(5.0)
        assert p.delta == 0.0
        assert p.gamma == pytest.approx(5.0)
        assert p.omega_bar == pytest.approx(np.sqrt(25.0 - 1.0 / 16.0))

    def test_from_geff(self):
        p = params_geff(0.1)
        assert p.g_eff == pytest.approx(0.1)
        assert p.g == p.Omega
        assert p.Delta == 500.0

    def test_overdamped_omega_bar_imaginary(self):
        p = params_geff(0.1)
        assert p.omega_bar.real == 0.0
        assert p.omega_bar.imag > 0.0

    def test_validation(self):
        with pytest.raises(ValueError):
            SystemParams(g=-1.0, Omega=1.0, Delta=100.0)
        with pytest.raises(ValueError):
            SystemParams(g=1.0, Omega=1.0, Delta=0.0)
        with pytest.raises(ValueError):
            SystemParams(g=1.0, Omega=1.0, Delta=100.0, kappa=-0.5)

    def test_small_detuning_warns(self):
        with pytest.warns(UserWarning):
            SystemParams(g=10.0, Omega=10.0, Delta=20.0)

    def test_gamma_infinite_without_decay(self):
        p = SystemParams(g=50.0, Omega=50.0, Delta=500.0, kappa=0.0)
        assert p.gamma == np.inf


class TestExactAmplitudes:
    def test_initial_condition(self):
        p = params_geff(5.0)
        a = amplitudes_exact(0.0, p)
        assert a.E == pytest.approx(1.0)
        assert a.G == 0.0
        assert a.R == 0.0

    def test_lossless_full_swap(self):
        # without decay the excitation swaps fully into the cavity at
        # g_eff t = pi / 2
        p = SystemParams(g=50.0, Omega=50.0, Delta=500.0, kappa=0.0)
        a = amplitudes_exact(np.pi / 2.0 / p.g_eff, p)
        assert abs(a.E) < 1e-12
        assert abs(abs(a.G) - 1.0) < 1e-12
        assert a.R < 1e-6

    def test_normalization(self):
        for geff in (0.05, 0.1, 0.25, 1.0, 5.0):
            p = params_geff(geff)
            e2, g2, r2 = exact_squares(np.linspace(0.0, 30.0, 301), p)
            assert np.max(np.abs(e2 + g2 + r2 - 1.0)) < 1e-12

    def test_reservoir_monotone(self):
        for geff in (0.05, 0.25, 5.0):
            p = params_geff(geff)
            r2 = exact_squares(np.linspace(0.0, 30.0, 3001), p)[2]
            assert np.min(np.diff(r2)) > -1e-9

    def test_continuous_across_critical_damping(self):
        # omega_bar = 0 at g_eff = kappa / 4; the two branches must agree
        ts = np.linspace(0.0, 20.0, 200)
        eps = 1e-8
        lo = exact_squares(ts, params_geff(0.25 - eps))
        hi = exact_squares(ts, params_geff(0.25 + eps))
        for a, b in zip(lo, hi):
            assert np.max(np.abs(a - b)) < 1e-6

    def test_scalar_and_array_agree(self):
        p = params_geff(5.0)
        ts = np.array([0.3, 1.7, 4.2])
        arr = amplitudes_exact(ts, p)
        for i, t in enumerate(ts):
            one = amplitudes_exact(float(t), p)
            assert one.E == pytest.approx(arr.E[i])
            assert one.G == pytest.approx(arr.G[i])
            assert one.R == pytest.approx(arr.R[i])

    def test_negative_time_rejected(self):
        with pytest.raises(ValueError):
            amplitudes_exact(-0.1, params_geff(5.0))

    def test_decay_only_limit(self):
        # deep overdamping: the excitation decays at rate 4 gamma^2 kappa
        p = params_geff(0.01)
        e2 = exact_squares(50.0, p)[0]
        assert e2 == pytest.approx(np.exp(-4.0 * p.gamma**2 * 50.0), rel=1e-2)


class TestStrongApproximation:
    def test_sums_to_one(self):
        p = params_geff(10.0)
        e2, g2, r2 = amplitudes_strong(np.linspace(0.0, 10.0, 101), p)
        assert np.max(np.abs(e2 + g2 + r2 - 1.0)) < 1e-12

    def test_deviation_bound(self):
        # measured accuracy of the O(kappa / g_eff) form at g_eff = 10 kappa
        p = params_geff(10.0)
        ts = np.linspace(0.0, 10.0, 2001)
        exact = exact_squares(ts, p)
        approx = amplitudes_strong(ts, p)
        dev = max(np.max(np.abs(a - b)) for a, b in zip(exact, approx))
        assert dev < 0.03

    def test_converges_with_coupling(self):
        devs = []
        for geff in (5.0, 10.0, 20.0, 40.0):
            p = params_geff(geff)
            ts = np.linspace(0.0, 10.0, 2001)
            exact = exact_squares(ts, p)
            approx = amplitudes_strong(ts, p)
            devs.append(max(np.max(np.abs(a - b)) for a, b in zip(exact, approx)))
        assert devs[0] > devs[1] > devs[2] > devs[3]


class TestWeakApproximation:
    def test_initial_condition(self):
        p = params_geff(0.1)
        e2, g2, r2 = amplitudes_weak(0.0, p)
        assert e2 == pytest.approx(1.0)
        assert g2 == pytest.approx(0.0, abs=1e-14)
        assert r2 == pytest.approx(0.0, abs=1e-12)

    def test_deviation_bound(self):
        # measured accuracy of the O(gamma^2) form at gamma = 0.1
        p = params_geff(0.1)
        ts = np.linspace(0.0, 60.0, 2001)
        exact = exact_squares(ts, p)
        approx = amplitudes_weak(ts, p)
        dev = max(np.max(np.abs(a - b)) for a, b in zip(exact, approx))
        assert dev < 0.04

    def test_converges_with_damping(self):
        devs = []
        for gamma in (0.1, 0.05, 0.025):
            p = params_geff(gamma)
            # compare over a fixed number of effective decay times
            ts = np.linspace(0.0, 1.5 / (4.0 * gamma**2), 2001)
            exact = exact_squares(ts, p)
            approx = amplitudes_weak(ts, p)
            devs.append(max(np.max(np.abs(a - b)) for a, b in zip(exact, approx)))
        assert devs[0] > devs[1] > devs[2]
