import math

import numpy as np
import pytest

from spinorbit.dynamics import (
    SpinOrbitParams,
    SpinState,
    integrate,
    potential_coeffs,
    rhs,
)
from spinorbit.errors import DomainError, IntegrationBlowupError
from spinorbit.kepler import tidal_averages

TWO_PI = 2.0 * math.pi


def rk4_reference(x0, y0, params, periods, spp):
    """Pure-Python RK4 on the reference rhs(); cross-checks the kernels."""
    h = TWO_PI / spp
    x, y = x0, y0
    xs, ys = [x], [y]
    for k in range(periods):
        for j in range(spp):
            t = TWO_PI * k + j * h
            k1x, k1y = rhs(SpinState(x, y, t), params)
            k2x, k2y = rhs(SpinState(x + 0.5 * h * k1x, y + 0.5 * h * k1y, t + 0.5 * h), params)
            k3x, k3y = rhs(SpinState(x + 0.5 * h * k2x, y + 0.5 * h * k2y, t + 0.5 * h), params)
            k4x, k4y = rhs(SpinState(x + h * k3x, y + h * k3y, t + h), params)
            x += h / 6.0 * (k1x + 2 * k2x + 2 * k3x + k4x)
            y += h / 6.0 * (k1y + 2 * k2y + 2 * k3y + k4y)
        xs.append(x)
        ys.append(y)
    return np.array(xs), np.array(ys)


class TestPotentialCoeffs:
    def test_circular(self):
        assert potential_coeffs(0.0) == (0.5, 0.0, 0.0)

    def test_e_01(self):
        # frozen from exact polynomial evaluation in 40-digit arithmetic
        a2, a3, a4 = potential_coeffs(0.1)
        assert a2 == pytest.approx(0.487540625, abs=1e-15)
        assert a3 == pytest.approx(0.17115625, abs=1e-15)
        assert a4 == pytest.approx(0.041541666666666666, abs=1e-15)

    def test_e_02(self):
        a2, a3, a4 = potential_coeffs(0.2)
        assert a2 == pytest.approx(0.45065, abs=1e-15)
        assert a3 == pytest.approx(0.31925, abs=1e-15)
        assert a4 == pytest.approx(0.15466666666666667, abs=1e-15)


class TestParams:
    def test_default_rule_matches_quotient(self):
        params = SpinOrbitParams.from_eccentricity(1e-3, 0.2056, 1e-3)
        assert abs(params.eta - tidal_averages(0.2056).eta) <= 1e-14

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"eps": -1.0, "e": 0.1, "mu": 0.0, "eta": 1.0},
            {"eps": 0.0, "e": 1.0, "mu": 0.0, "eta": 1.0},
            {"eps": 0.0, "e": 0.1, "mu": -1e-3, "eta": 1.0},
            {"eps": 0.0, "e": 0.1, "mu": 0.0, "eta": 1.0, "model": "spline"},
        ],
    )
    def test_validation(self, kwargs):
        with pytest.raises(DomainError):
            SpinOrbitParams(**kwargs)


class TestRhs:
    def test_free_rotation(self):
        params = SpinOrbitParams(eps=0.0, e=0.2, mu=0.0, eta=1.0)
        for state in (SpinState(0.3, 1.7, 2.0), SpinState(-4.0, 0.2, 11.0)):
            dx, dy = rhs(state, params)
            assert dx == state.y
            assert dy == 0.0

    def test_torque_vanishes_on_drift(self):
        params = SpinOrbitParams(eps=0.0, e=0.2, mu=1e-2, eta=1.31)
        _, dy = rhs(SpinState(0.5, 1.31, 3.0), params)
        assert dy == 0.0

    def test_models_agree_at_circular(self, rng):
        trig = SpinOrbitParams(eps=1e-3, e=0.0, mu=1e-3, eta=1.0, model="trig")
        exact = SpinOrbitParams(eps=1e-3, e=0.0, mu=1e-3, eta=1.0, model="exact")
        for _ in range(50):
            state = SpinState(float(rng.uniform(-5, 5)), float(rng.uniform(0, 2)),
                              float(rng.uniform(0, 20)))
            assert rhs(state, trig)[1] == pytest.approx(rhs(state, exact)[1], abs=1e-14)


class TestIntegrate:
    def test_exponential_decay_oracle(self):
        # eps = 0 integrates exactly: y(t) = eta + (y0 - eta) exp(-mu t)
        mu, eta, y0 = 1e-3, 1.0217206260771797, 1.5
        params = SpinOrbitParams(eps=0.0, e=0.06, mu=mu, eta=eta)
        orbit = integrate(0.0, y0, params, 100, 256)
        expected = eta + (y0 - eta) * np.exp(-mu * TWO_PI * orbit.k)
        assert np.max(np.abs(orbit.y - expected)) <= 1e-9

    def test_free_rotation_exact(self):
        params = SpinOrbitParams(eps=0.0, e=0.3, mu=0.0, eta=1.0)
        orbit = integrate(0.25, 1.2, params, 100, 64)
        assert np.all(orbit.y == 1.2)
        assert orbit.x == pytest.approx(0.25 + TWO_PI * orbit.k * 1.2, rel=1e-12)

    def test_momentum_conserved_long_run(self):
        params = SpinOrbitParams(eps=0.0, e=0.2, mu=0.0, eta=1.0)
        orbit = integrate(0.0, 1.37, params, 1000, 64)
        assert np.max(np.abs(orbit.y - 1.37)) <= 1e-12

    def test_synchronous_capture(self):
        # moderate eccentricity, drift inside the 1:1 libration zone
        params = SpinOrbitParams.from_eccentricity(1e-3, 0.06, 1e-3)
        orbit = integrate(0.0, params.eta, params, 12800, 256)
        tail = orbit.y[11520:]
        assert abs(np.mean(tail) - 1.0) < 5e-3
        # step-halving cross-check on the final sample
        fine = integrate(0.0, params.eta, params, 12800, 512)
        assert abs(orbit.y[-1] - fine.y[-1]) <= 1e-8

    def test_fourth_order_convergence(self):
        params = SpinOrbitParams.from_eccentricity(0.05, 0.1, 1e-3)
        coarse = integrate(0.1, 1.3, params, 10, 32).y[-1]
        medium = integrate(0.1, 1.3, params, 10, 64).y[-1]
        fine = integrate(0.1, 1.3, params, 10, 128).y[-1]
        ratio = abs(coarse - medium) / abs(medium - fine)
        assert 12.0 <= ratio <= 20.0

    def test_models_identical_at_circular(self):
        trig = SpinOrbitParams(eps=1e-3, e=0.0, mu=1e-3, eta=1.0, model="trig")
        exact = SpinOrbitParams(eps=1e-3, e=0.0, mu=1e-3, eta=1.0, model="exact")
        orbit_t = integrate(0.0, 1.1, trig, 50, 128)
        orbit_e = integrate(0.0, 1.1, exact, 50, 128)
        assert np.max(np.abs(orbit_t.y - orbit_e.y)) <= 1e-12
        assert np.max(np.abs(orbit_t.x - orbit_e.x)) <= 1e-12

    def test_kernel_matches_reference_rhs(self):
        for model in ("trig", "exact"):
            params = SpinOrbitParams(eps=2e-3, e=0.15, mu=5e-3, eta=1.1, model=model)
            orbit = integrate(0.2, 1.4, params, 3, 32)
            xs, ys = rk4_reference(0.2, 1.4, params, 3, 32)
            assert np.max(np.abs(orbit.x - xs)) <= 1e-12, model
            assert np.max(np.abs(orbit.y - ys)) <= 1e-12, model

    def test_blowup_carries_index(self):
        params = SpinOrbitParams(eps=0.0, e=0.0, mu=1e10, eta=1e300)
        with pytest.raises(IntegrationBlowupError) as excinfo:
            integrate(0.0, 0.0, params, 5, 256)
        assert 0 <= excinfo.value.k <= 5

    def test_preconditions(self):
        params = SpinOrbitParams(eps=0.0, e=0.0, mu=0.0, eta=1.0)
        with pytest.raises(DomainError):
            integrate(0.0, 1.0, params, 0, 256)
        with pytest.raises(DomainError):
            integrate(0.0, 1.0, params, 10, 8)

    def test_deterministic(self):
        params = SpinOrbitParams.from_eccentricity(1e-3, 0.2, 1e-3)
        a = integrate(0.0, params.eta, params, 200, 64)
        b = integrate(0.0, params.eta, params, 200, 64)
        assert np.array_equal(a.y, b.y) and np.array_equal(a.x, b.x)


class TestStroboscopicOrbit:
    def test_sample_indexing(self):
        params = SpinOrbitParams(eps=0.0, e=0.0, mu=0.0, eta=1.0)
        orbit = integrate(0.0, 1.0, params, 17, 32)
        assert orbit.periods == 17
        assert np.array_equal(orbit.k, np.arange(18))
        assert orbit.x0 == 0.0 and orbit.y0 == 1.0

    def test_state_mod(self):
        state = SpinState(x=TWO_PI + 0.5, y=1.0, t=0.0)
        assert state.x_mod == pytest.approx(0.5, abs=1e-12)
