import math

import numpy as np
import pytest

from spinorbit.errors import DomainError, DriftUndeterminedError, SmallDivisorError
from spinorbit.kepler import tidal_averages
from spinorbit.normalform import omega_normalized
from spinorbit.parametrization import (
    GAMMA,
    contour_zero_level,
    constraint_C,
    embedding_jacobian_min,
    eta2_closed_form,
    eta2_resonance_sum,
    eta_of,
    potential_x_series,
    resonance_approximant,
    solve_embedding,
)

RESONANT = (1.0, 1.5, 2.0)


def random_nonresonant_omega(rng, k_max=4):
    """Frequency clear of every divisor arising up to order k_max."""
    while True:
        omega = float(rng.uniform(0.55, 2.45))
        divisors = [
            abs(m * omega + n)
            for m in range(0, 2 * k_max + 1, 2)
            for n in range(-4 * k_max, 4 * k_max + 1)
            if (m, n) != (0, 0)
        ]
        if min(divisors) >= 5e-3 and min(abs(omega - r) for r in RESONANT) >= 0.05:
            return omega


def apply_operator(series, omega0, mu):
    return series.apply_D(omega0).apply_D(omega0) + series.apply_D(omega0).scale(mu)


class TestSolveEmbedding:
    def test_first_order_support(self):
        solution = solve_embedding(1.0 + 1.0 / (50 + GAMMA), 0.1, 1e-3, order=1)
        assert solution.u[0].support == {(2, -2), (2, -3), (2, -4)}
        assert solution.eta_coeffs[0] == solution.omega0
        assert solution.eta_coeffs[1] == 0.0

    def test_odd_drift_coefficients_vanish(self, rng):
        for _ in range(20):
            omega = random_nonresonant_omega(rng)
            e = float(rng.uniform(0.0, 0.3))
            mu = float(10 ** rng.uniform(-4, -2))
            solution = solve_embedding(omega, e, mu, order=3)
            assert abs(solution.eta_coeffs[1]) <= 1e-12
            assert abs(solution.eta_coeffs[3]) <= 1e-12

    def test_eta2_matches_independent_derivation(self, rng):
        for _ in range(20):
            omega = random_nonresonant_omega(rng)
            e = float(rng.uniform(0.0, 0.3))
            mu = float(10 ** rng.uniform(-4, -2))
            solution = solve_embedding(omega, e, mu, order=2)
            expected = eta2_resonance_sum(omega, e, mu)
            assert solution.eta_coeffs[2] == pytest.approx(expected, rel=1e-12)

    def test_eta2_closed_form_flagged_discrepancy(self):
        # the transcribed closed form differs from the solver by a global
        # sign and by its third-term denominator; the relationship below
        # pins the transcription so any further drift is caught
        omega, e, mu = 1.0 + 1.0 / (50 + GAMMA), 0.1, 1e-3
        solver = solve_embedding(omega, e, mu, order=2).eta_coeffs[2]
        transcribed = eta2_closed_form(omega, e, mu)
        derived = eta2_resonance_sum(omega, e, mu)
        assert solver == pytest.approx(derived, rel=1e-12)
        assert transcribed != pytest.approx(solver, rel=1e-10)
        # first two response terms agree after a sign flip; the third is
        # the typo'd one and is numerically tiny at this point
        assert transcribed == pytest.approx(-derived, rel=1e-3)

    def test_consistency_with_normalized_frequency(self, rng):
        # inverting Omega(Y; eps) = omega reproduces the drift series:
        # Omega(eta(omega); eps) - omega = O(eps^4) + O(e^8 eps^2), both
        # well under 1e-9 at eps = 1e-4 and 0.08 clear of the poles
        for _ in range(10):
            omega = float(rng.uniform(1.08, 1.42))
            if min(abs(omega - r) for r in RESONANT) < 0.08:
                continue
            e = float(rng.uniform(0.0, 0.2))
            eta = eta_of(omega, e, 1e-4, mu=1e-6, order=3)
            back = omega_normalized(eta, 1e-4, e).value
            assert abs(back - omega) <= 1e-9

    def test_per_order_residuals(self, rng):
        for _ in range(5):
            omega = random_nonresonant_omega(rng)
            e = float(rng.uniform(0.05, 0.3))
            mu = float(10 ** rng.uniform(-4, -2))
            solution = solve_embedding(omega, e, mu, order=4)
            for u_k, source in zip(solution.u, solution.sources):
                residual = apply_operator(u_k, omega, mu) - source
                assert residual.max_abs_coefficient() <= 1e-12 * max(
                    source.max_abs_coefficient(), 1e-300
                )

    def test_support_stays_even_and_bounded(self, rng):
        solution = solve_embedding(random_nonresonant_omega(rng), 0.25, 1e-3, order=4)
        for k, u_k in enumerate(solution.u, start=1):
            for m, n in u_k.support:
                assert m % 2 == 0 and 0 <= m <= 2 * k

    def test_every_u_has_zero_average(self, rng):
        solution = solve_embedding(random_nonresonant_omega(rng), 0.2, 1e-3, order=4)
        for u_k in solution.u:
            assert u_k.average() == 0.0

    def test_mu_zero_rejected(self):
        with pytest.raises(DriftUndeterminedError):
            solve_embedding(1.2, 0.1, 0.0, order=2)

    def test_resonant_frequency_raises(self):
        with pytest.raises(SmallDivisorError) as excinfo:
            solve_embedding(1.5, 0.1, 1e-3, order=1)
        assert excinfo.value.wave == (2, -3)

    def test_order_bounds(self):
        with pytest.raises(DomainError):
            solve_embedding(1.2, 0.1, 1e-3, order=5)
        with pytest.raises(DomainError):
            solve_embedding(1.2, 0.1, 1e-3, order=0)

    def test_forcing_series(self):
        series = potential_x_series(0.0)
        assert series.terms == {(2, -2): (0.0, 1.0)}


class TestEtaOf:
    def test_zero_ellipticity(self):
        assert eta_of(1.234, 0.1, 0.0, 1e-3) == 1.234

    def test_frozen_second_order_value(self):
        omega = 1.5 + 1.0 / (50 + GAMMA)
        value = eta_of(omega, 0.285, 1e-3, 1e-3, order=2)
        expected = omega + 1e-6 * eta2_resonance_sum(omega, 0.285, 1e-3)
        assert value == pytest.approx(expected, rel=1e-12)

    def test_order4_to_order2_eps_scaling(self):
        # eta3 = 0, so the K=4/K=2 difference is exactly eta4*eps^4
        omega, e, mu = 1.0 + 1.0 / (50 + GAMMA), 0.1, 1e-3
        diff = lambda eps: abs(
            eta_of(omega, e, eps, mu, order=4) - eta_of(omega, e, eps, mu, order=2)
        )
        ratio = diff(1e-4) / diff(5e-5)
        assert ratio == pytest.approx(16.0, abs=0.1)


class TestConstraint:
    def test_zero_at_exact_drift_root(self):
        from scipy.optimize import brentq

        omega = 1.7
        e_star = brentq(lambda e: tidal_averages(e).eta - omega, 0.1, 0.45, xtol=1e-15)
        assert abs(constraint_C(omega, e_star, 0.0, 1e-3)) <= 1e-12

    def test_sign_change_brackets_two_to_one(self):
        omega = 2.0 - 1.0 / (100 + GAMMA)
        assert constraint_C(omega, 0.36, 0.0, 1e-3) < 0.0
        assert constraint_C(omega, 0.41, 0.0, 1e-3) > 0.0


class TestResonanceApproximant:
    def test_frozen_value(self):
        approx = resonance_approximant(3, 2, 50, "above")
        assert approx.omega_k == pytest.approx(1.5197558048228869, abs=1e-15)

    def test_offset_exact(self):
        for k in (1, 7, 50, 100):
            above = resonance_approximant(2, 1, k, "above")
            below = resonance_approximant(2, 1, k, "below")
            assert above.omega_k - 2.0 == pytest.approx(1.0 / (k + GAMMA), rel=1e-15)
            assert 2.0 - below.omega_k == pytest.approx(1.0 / (k + GAMMA), rel=1e-15)

    def test_strictly_decreasing_offsets(self):
        offsets = [
            abs(resonance_approximant(3, 2, k, "above").omega_k - 1.5)
            for k in range(1, 40)
        ]
        assert all(b < a for a, b in zip(offsets, offsets[1:]))

    def test_synchronous_from_below_warns(self):
        with pytest.warns(UserWarning):
            resonance_approximant(1, 1, 50, "below")

    def test_validation(self):
        with pytest.raises(DomainError):
            resonance_approximant(3, 0, 50, "above")
        with pytest.raises(DomainError):
            resonance_approximant(3, 2, 0, "above")
        with pytest.raises(DomainError):
            resonance_approximant(3, 2, 50, "sideways")


class TestContours:
    def test_eps_zero_row_matches_exact_root(self):
        from scipy.optimize import brentq

        omega = 2.0 - 1.0 / (100 + GAMMA)
        result = contour_zero_level(
            omega, 1e-3, 3, (0.3, 0.45), (0.0, 1e-3), 32, 16
        )
        eps0_roots = [e for e, eps in result.points if eps == 0.0]
        assert len(eps0_roots) == 1
        expected = brentq(lambda e: tidal_averages(e).eta - omega, 0.3, 0.45, xtol=1e-14)
        assert abs(eps0_roots[0] - expected) <= 1e-6
        assert not result.failed_rows

    def test_resonant_omega_marks_all_rows(self):
        result = contour_zero_level(1.5, 1e-3, 2, (0.1, 0.3), (0.0, 1e-3), 16, 16)
        assert result.points == []
        assert len(result.failed_rows) == 16

    def test_rows_without_roots_yield_no_points(self):
        # omega = 1.7 has its root near e = 0.345, outside this e-range
        result = contour_zero_level(1.7, 1e-3, 2, (0.05, 0.2), (0.0, 1e-3), 16, 16)
        assert result.points == []
        assert not result.failed_rows

    def test_grid_minimum(self):
        with pytest.raises(DomainError):
            contour_zero_level(1.7, 1e-3, 2, (0.1, 0.3), (0.0, 1e-3), 8, 16)


class TestDiffeomorphism:
    def test_positive_jacobian_on_box(self):
        # frequencies at least 0.05 from the resonances: closer in, the
        # truncated series stops being a small correction at eps = 1e-3
        # (u_1 ~ eps/alpha^2 reaching O(1)) and the check fails by design
        for omega in (1.06, 1.24, 1.44, 1.56, 1.9, 2.06):
            for e in (0.0, 0.15, 0.3):
                solution = solve_embedding(omega, e, 1e-3, order=3)
                assert embedding_jacobian_min(solution, 1e-3, n_grid=64) > 0.0

    def test_jacobian_fails_close_to_resonance(self):
        # documents the series breakdown: a 3:2 approximant at k = 70 is
        # within 0.015 of the resonance and the eps = 1e-3 embedding is no
        # longer a graph over theta
        omega = 1.5 + 1.0 / (70 + GAMMA)
        solution = solve_embedding(omega, 0.3, 1e-3, order=3)
        assert embedding_jacobian_min(solution, 1e-3, n_grid=64) < 0.0
