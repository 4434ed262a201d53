import pytest

from spinorbit.errors import NearResonanceError
from spinorbit.kepler import drift_series
from spinorbit.normalform import (
    GUARD_RADIUS,
    omega_app,
    omega_normalized,
    singular_distance,
)


class TestOmegaNormalized:
    def test_zero_ellipticity_is_identity(self, rng):
        for y in rng.uniform(0.5, 2.8, 50):
            if singular_distance(float(y)) < GUARD_RADIUS:
                continue
            result = omega_normalized(float(y), 0.0, 0.25)
            assert result.value == float(y)

    def test_single_pole_term_hand_value(self):
        # e = 0 leaves only Y - eps^2/(8 (Y-1)^3):
        # 1.2 - 1e-6/(8 * 0.008) = 1.199984375 exactly
        result = omega_normalized(1.2, 1e-3, 0.0)
        assert result.value == pytest.approx(1.199984375, abs=1e-15)
        assert result.singular_distance == pytest.approx(0.2, abs=1e-15)

    def test_frozen_full_expression(self):
        # frozen from an independent 40-digit evaluation
        result = omega_normalized(1.3, 1e-3, 0.1)
        assert result.value == pytest.approx(1.2999974316429696, abs=1e-14)

    def test_correction_scales_as_eps_squared(self, rng):
        checked = 0
        for _ in range(40):
            y = float(rng.uniform(1.05, 1.45))
            e = float(rng.uniform(0.0, 0.3))
            small = omega_normalized(y, 0.05, e).value - y
            large = omega_normalized(y, 0.1, e).value - y
            # skip points where the correction itself nearly cancels and
            # the ratio would be dominated by the rounding of Omega
            if abs(small) < 1e-3:
                continue
            assert large / small == pytest.approx(4.0, abs=1e-12)
            checked += 1
        assert checked >= 20

    @pytest.mark.parametrize("y", [0.9995, 1.0, 1.4999, 1.5, 2.0009, 2.0])
    def test_guard_radius(self, y):
        with pytest.raises(NearResonanceError):
            omega_normalized(y, 1e-3, 0.1)

    def test_guard_boundary_allows_distance_beyond_radius(self):
        omega_normalized(1.0 + 1.1 * GUARD_RADIUS, 1e-3, 0.1)
        omega_normalized(1.5 - 1.1 * GUARD_RADIUS, 1e-3, 0.1)


class TestOmegaApp:
    def test_zero_ellipticity(self):
        for e in (0.1, 0.2, 0.3):
            assert omega_app(0.0, e) == drift_series(e)

    def test_circular_orbit_is_singular(self):
        # e = 0 puts the drift exactly on the (Y-1)^3 pole
        with pytest.raises(NearResonanceError):
            omega_app(1e-3, 0.0)

    def test_non_resonant_point(self):
        # eccentricity whose series drift is 1.25, far from all poles
        from scipy.optimize import brentq

        e_star = brentq(lambda e: drift_series(e) - 1.25, 0.1, 0.3, xtol=1e-14)
        value = omega_app(1e-3, e_star)
        assert abs(value - 1.25) <= 1e-4
        assert value != 1.25
