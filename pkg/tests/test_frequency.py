import math

import numpy as np
import pytest

from spinorbit.dynamics import SpinOrbitParams, integrate
from spinorbit.errors import DomainError
from spinorbit.frequency import (
    estimate,
    omega_sequence,
    sigma_vs_T,
    sweep,
    tail_stats,
    tail_window,
)
from spinorbit.kepler import tidal_averages

from conftest import make_orbit

TWO_PI = 2.0 * math.pi


class TestWindow:
    def test_last_tenth(self):
        assert tail_window(100) == (90, 100)
        assert tail_window(12800) == (11520, 12800)
        assert tail_window(101) == (91, 101)

    def test_short_windows_rejected(self):
        with pytest.raises(DomainError):
            tail_stats(np.ones(10))  # T = 9 < 10
        with pytest.raises(DomainError):
            tail_stats(np.ones(11))  # window [9, 10] has 2 samples
        tail_stats(np.ones(21))  # T = 20 -> window [18, 20], fine


class TestEstimate:
    def test_constant_sequence(self):
        est = estimate(make_orbit(np.full(101, 1.37)))
        assert est.omega_num == pytest.approx(1.37, rel=1e-15)
        assert est.sigma == 0.0
        assert est.window == (90, 100)

    def test_affine_recovery_exact(self):
        k = np.arange(201)
        est = estimate(make_orbit(0.8 + 3e-5 * k))
        window = np.arange(180, 201)
        assert est.omega_num == pytest.approx(np.mean(0.8 + 3e-5 * window), abs=1e-12)
        assert est.sigma == pytest.approx(3e-5, abs=1e-12)

    def test_transient_invariance(self, rng):
        tail = 1.0 + 0.01 * np.sin(np.arange(301))
        y1 = tail.copy()
        y2 = tail.copy()
        y2[:269] = rng.normal(size=269)  # window starts at ceil(0.9*300) = 270
        assert estimate(make_orbit(y1)) == estimate(make_orbit(y2))

    def test_omega_sequence_is_y(self):
        orbit = make_orbit([1.0, 1.1, 0.9])
        assert np.array_equal(omega_sequence(orbit), orbit.y)

    def test_decay_orbit_sequence(self):
        mu, eta, y0 = 1e-3, 1.2, 1.5
        params = SpinOrbitParams(eps=0.0, e=0.2056, mu=mu, eta=eta)
        orbit = integrate(0.0, y0, params, 100, 256)
        omega = omega_sequence(orbit)
        expected = eta + (y0 - eta) * np.exp(-TWO_PI * mu * np.arange(101))
        assert np.max(np.abs(omega - expected)) <= 1e-9

    @pytest.mark.parametrize("T,mu", [(100, 1e-3), (400, 1e-3), (100, 1e-2)])
    def test_decay_slope_envelope(self, T, mu):
        # |sigma| <= |y0-eta| * 2*pi*mu * exp(-1.8*pi*mu*T) for pure decay
        eta, y0 = 1.0, 1.5
        params = SpinOrbitParams(eps=0.0, e=0.0, mu=mu, eta=eta)
        est = estimate(integrate(0.0, y0, params, T, 256))
        bound = abs(y0 - eta) * TWO_PI * mu * math.exp(-1.8 * math.pi * mu * T)
        assert abs(est.sigma) <= bound
        assert est.sigma < 0.0  # decaying from above


class TestSweep:
    def test_grid_layout_row_major(self):
        table = sweep(1e-3, 40, (0.0, 0.2), (0.0, 1e-3), 3, 2, steps_per_period=32)
        assert np.allclose(table.e, [0.0, 0.0, 0.1, 0.1, 0.2, 0.2])
        assert np.allclose(table.eps, [0.0, 1e-3] * 3)

    def test_eps_zero_column_equals_drift(self):
        table = sweep(1e-3, 40, (0.0, 0.3), (0.0, 1e-3), 4, 3, steps_per_period=32)
        mask = table.eps == 0.0
        expected = [tidal_averages(float(e)).eta for e in table.e[mask]]
        assert np.allclose(table.omega_num[mask], expected, atol=1e-12)
        assert np.allclose(table.sigma[mask], 0.0, atol=1e-14)

    def test_deterministic(self):
        kwargs = dict(mu=1e-3, periods=60, e_range=(0.0, 0.3), eps_range=(0.0, 1e-3),
                      n_e=3, n_eps=3, steps_per_period=32)
        a = sweep(**kwargs)
        b = sweep(**kwargs)
        assert np.array_equal(a.omega_num, b.omega_num)
        assert np.array_equal(a.sigma, b.sigma)

    def test_preconditions(self):
        with pytest.raises(DomainError):
            sweep(1e-3, 40, (0.0, 0.3), (0.0, 1e-3), 1, 3)
        with pytest.raises(DomainError):
            sweep(1e-3, 10, (0.0, 0.3), (0.0, 1e-3), 3, 3)

    def test_custom_y0(self):
        table = sweep(1e-3, 40, (0.0, 0.2), (0.0, 1e-3), 2, 2,
                      steps_per_period=32, y0=1.3)
        # eps = 0 cells decay from 1.3 toward eta(e), no NaNs anywhere
        assert np.all(np.isfinite(table.omega_num))


class TestSigmaLadder:
    def test_prefix_matches_direct_runs(self):
        # one long integration's prefixes must reproduce separate shorter runs
        ladder = sigma_vs_T(1e-3, (0.0, 0.3), (0.0, 1e-3), 3, 3,
                            T_list=(20, 40, 80), steps_per_period=32)
        for T, max_sigma in ladder:
            table = sweep(1e-3, T, (0.0, 0.3), (0.0, 1e-3), 3, 3, steps_per_period=32)
            assert max_sigma == pytest.approx(np.max(np.abs(table.sigma)), abs=0.0)

    def test_t_list_validation(self):
        with pytest.raises(DomainError):
            sigma_vs_T(1e-3, (0.0, 0.3), (0.0, 1e-3), 2, 2, T_list=(40, 40))
        with pytest.raises(DomainError):
            sigma_vs_T(1e-3, (0.0, 0.3), (0.0, 1e-3), 2, 2, T_list=(10, 40))


class TestFailureMarkers:
    def test_nan_rows_do_not_abort(self):
        from spinorbit.frequency import _stats_per_cell

        ys = np.ones((3, 41))
        ys[1, 25] = np.nan
        omega, sigma = _stats_per_cell(ys)
        assert np.isnan(omega[1]) and np.isnan(sigma[1])
        assert omega[0] == 1.0 and omega[2] == 1.0
