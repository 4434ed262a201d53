"""Spin-orbit equations of motion and the stroboscopic integrator.

The second-order equation is integrated as the first-order system

    dx/dt = y
    dy/dt = -eps * V_x(x, t) - mu * (y - eta)

with either the exact Keplerian forcing (a/r)^3 sin(2x - 2f) or the
three-harmonic trigonometric truncation of the potential.  A classical
fixed-step RK4 with an integer number of steps per period produces samples
at exact multiples of 2*pi (stroboscopic sections).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import DomainError, IntegrationBlowupError
from .kepler import orbit_point, tidal_averages

TWO_PI = 2.0 * math.pi

MODELS = ("trig", "exact")

DEFAULT_STEPS_PER_PERIOD = 256


def potential_coeffs(e: float) -> tuple[float, float, float]:
    """Amplitudes (A2, A3, A4) of the truncated potential.

    V(x, t) = -[A2 cos(2x-2t) + A3 cos(2x-3t) + A4 cos(2x-4t)] with

        A2 = 1/2 - (5/4) e^2 + (13/32) e^4
        A3 = (7/4) e - (123/32) e^3
        A4 = (17/4) e^2 - (115/12) e^4
    """
    if not (0.0 <= e < 1.0):
        raise DomainError(f"eccentricity must be in [0, 1), got {e}")
    e2 = e * e
    a2 = 0.5 - 1.25 * e2 + (13.0 / 32.0) * e2 * e2
    a3 = 1.75 * e - (123.0 / 32.0) * e * e2
    a4 = 4.25 * e2 - (115.0 / 12.0) * e2 * e2
    return a2, a3, a4


@dataclass(frozen=True)
class SpinOrbitParams:
    """Model parameters: ellipticity, eccentricity, dissipation and drift.

    ``from_eccentricity`` applies the default rule eta = N(e)/L(e); pass
    ``eta`` explicitly to decouple the drift from the eccentricity.
    """

    eps: float
    e: float
    mu: float
    eta: float
    model: str = "trig"

    def __post_init__(self):
        if self.eps < 0.0:
            raise DomainError(f"eps must be >= 0, got {self.eps}")
        if self.mu < 0.0:
            raise DomainError(f"mu must be >= 0, got {self.mu}")
        if not (0.0 <= self.e < 1.0):
            raise DomainError(f"eccentricity must be in [0, 1), got {self.e}")
        if self.model not in MODELS:
            raise DomainError(f"model must be one of {MODELS}, got {self.model!r}")

    @classmethod
    def from_eccentricity(
        cls, eps: float, e: float, mu: float, model: str = "trig"
    ) -> "SpinOrbitParams":
        return cls(eps=eps, e=e, mu=mu, eta=tidal_averages(e).eta, model=model)


@dataclass(frozen=True)
class SpinState:
    """Rotation angle (lifted), angular velocity, and time."""

    x: float
    y: float
    t: float

    @property
    def x_mod(self) -> float:
        return self.x % TWO_PI


@dataclass(frozen=True)
class StroboscopicOrbit:
    """Samples (k, x_k, y_k) at t = 2*pi*k for k = 0..T."""

    x: np.ndarray
    y: np.ndarray
    params: SpinOrbitParams
    steps_per_period: int
    x0: float
    y0: float
    k: np.ndarray = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "k", np.arange(len(self.y)))

    @property
    def periods(self) -> int:
        return len(self.y) - 1


def rhs(state: SpinState, params: SpinOrbitParams) -> tuple[float, float]:
    """Reference right-hand side (dx/dt, dy/dt); mirrors the JIT kernels."""
    if params.model == "trig":
        a2, a3, a4 = potential_coeffs(params.e)
        force = (
            a2 * math.sin(2.0 * state.x - 2.0 * state.t)
            + a3 * math.sin(2.0 * state.x - 3.0 * state.t)
            + a4 * math.sin(2.0 * state.x - 4.0 * state.t)
        )
        dydt = -2.0 * params.eps * force - params.mu * (state.y - params.eta)
    else:
        point = orbit_point(state.t, params.e)
        inv_r3 = 1.0 / point.r_over_a**3
        dydt = -params.eps * inv_r3 * math.sin(2.0 * state.x - 2.0 * point.f) \
            - params.mu * (state.y - params.eta)
    return state.y, dydt


def integrate(
    x0: float,
    y0: float,
    params: SpinOrbitParams,
    periods: int,
    steps_per_period: int = DEFAULT_STEPS_PER_PERIOD,
) -> StroboscopicOrbit:
    """Fixed-step RK4 over ``periods`` orbital periods, sampled at 2*pi*k.

    Deterministic for fixed inputs.  Raises
    :class:`~spinorbit.errors.IntegrationBlowupError` carrying the first
    stroboscopic index at which the state became non-finite.
    """
    periods = int(periods)
    steps_per_period = int(steps_per_period)
    if periods < 1:
        raise DomainError(f"periods must be >= 1, got {periods}")
    if steps_per_period < 16:
        raise DomainError(f"steps_per_period must be >= 16, got {steps_per_period}")
    if params.model == "trig":
        a2, a3, a4 = potential_coeffs(params.e)
        xs, ys = _kernels.rk4_trig(
            x0, y0, params.eps, params.mu, params.eta, a2, a3, a4,
            periods, steps_per_period,
        )
    else:
        xs, ys = _kernels.rk4_exact(
            x0, y0, params.eps, params.mu, params.eta, params.e,
            periods, steps_per_period,
        )
    bad = ~(np.isfinite(xs) & np.isfinite(ys))
    if bad.any():
        raise IntegrationBlowupError(int(np.argmax(bad)))
    return StroboscopicOrbit(
        x=xs, y=ys, params=params, steps_per_period=steps_per_period, x0=x0, y0=y0
    )
