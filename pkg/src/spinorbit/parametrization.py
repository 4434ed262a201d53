"""Order-by-order solution of the invariant-attractor embedding equation.

The attractor with Diophantine frequency omega0 is parametrized as
x = theta + u(theta, t) with linear flow theta' = omega0.  The embedding
function u and the drift eta are expanded in powers of the ellipticity;
at each order k the drift coefficient eta_k is fixed by requiring the
right-hand side

    D^2 u_k + mu D u_k = S_k + mu eta_k

to have zero average, after which u_k follows by inverting D^2 + mu D
harmonic by harmonic.  S_k collects the Taylor terms of the forcing
V_x(theta + u, t) of combined order k (the derivatives of V are generated
symbolically: each d/dx doubles the harmonic weight and toggles sin/cos).

Also here: the drift function eta(omega, e, eps, mu), the constraint
C = N(e)/L(e) - eta and its zero-level contours in the (e, eps) plane,
and the irrational resonance approximants omega_k = p/q +/- 1/(k+gamma).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .dynamics import potential_coeffs
from .errors import DomainError, DriftUndeterminedError, SmallDivisorError
from .kepler import tidal_averages
from .trigseries import TrigSeries2D

#: golden-ratio conjugate (sqrt(5) - 1) / 2 used by the approximants
GAMMA = (math.sqrt(5.0) - 1.0) / 2.0

MAX_ORDER = 4

DEFAULT_DIVISOR_FLOOR = 1e-4


@dataclass(frozen=True)
class EmbeddingSolution:
    """Per-order embedding series u_1..u_K and drift coefficients eta_0..eta_K.

    ``sources[k-1]`` holds the zero-average right-hand side solved at order
    k, so residuals can be checked independently.
    """

    omega0: float
    order: int
    u: tuple[TrigSeries2D, ...]
    eta_coeffs: tuple[float, ...]
    sources: tuple[TrigSeries2D, ...]
    e: float
    mu: float

    def u_total(self, eps: float) -> TrigSeries2D:
        """The embedding correction u = sum_k u_k eps^k."""
        total = TrigSeries2D.zero()
        for k, u_k in enumerate(self.u, start=1):
            total = total + u_k.scale(eps**k)
        return total

    def eta(self, eps: float) -> float:
        """The drift eta = sum_k eta_k eps^k truncated at the solved order."""
        return sum(coeff * eps**k for k, coeff in enumerate(self.eta_coeffs))


@dataclass(frozen=True)
class ResonanceApproximant:
    """Irrational stand-in p/q +/- 1/(k+gamma) for a resonant frequency."""

    p: int
    q: int
    k: int
    sign: str
    omega_k: float


def potential_x_series(e: float) -> TrigSeries2D:
    """V_x as a trig series: 2[A2 sin(2th-2t) + A3 sin(2th-3t) + A4 sin(2th-4t)]."""
    a2, a3, a4 = potential_coeffs(e)
    return TrigSeries2D(
        {(2, -2): (0.0, 2.0 * a2), (2, -3): (0.0, 2.0 * a3), (2, -4): (0.0, 2.0 * a4)}
    )


@lru_cache(maxsize=8192)
def solve_embedding(
    omega0: float,
    e: float,
    mu: float,
    order: int = 3,
    divisor_floor: float = DEFAULT_DIVISOR_FLOOR,
) -> EmbeddingSolution:
    """Solve the embedding equation order by order up to ``order`` <= 4.

    Raises :class:`~spinorbit.errors.SmallDivisorError` when a harmonic's
    divisor |omega0 m + n| falls below ``divisor_floor``, and
    :class:`~spinorbit.errors.DriftUndeterminedError` for mu = 0, where
    the zero-average condition no longer determines the eta_k.
    """
    if not 1 <= order <= MAX_ORDER:
        raise DomainError(f"order must be in 1..{MAX_ORDER}, got {order}")
    if mu <= 0.0:
        raise DriftUndeterminedError(
            "mu must be positive: the dissipative determination of the drift "
            "coefficients fails at mu = 0"
        )

    w1 = potential_x_series(e)
    w2 = w1.d_theta()
    w3 = w2.d_theta()
    w4 = w3.d_theta()

    u: list[TrigSeries2D] = []
    sources: list[TrigSeries2D] = []
    eta_coeffs: list[float] = [omega0]
    for k in range(1, order + 1):
        if k == 1:
            s_k = -w1
        elif k == 2:
            s_k = -(w2 * u[0])
        elif k == 3:
            s_k = -(w2 * u[1]) - (w3 * (u[0] * u[0])).scale(0.5)
        else:
            s_k = (
                -(w2 * u[2])
                - (w3 * (u[0] * u[1]))
                - (w4 * (u[0] * u[0] * u[0])).scale(1.0 / 6.0)
            )
        eta_coeffs.append(-s_k.average() / mu)
        s_tilde = s_k.without_average()
        u.append(s_tilde.invert_D2_muD(omega0, mu, divisor_floor))
        sources.append(s_tilde)

    return EmbeddingSolution(
        omega0=omega0, order=order, u=tuple(u), eta_coeffs=tuple(eta_coeffs),
        sources=tuple(sources), e=e, mu=mu,
    )


def eta_of(
    omega: float,
    e: float,
    eps: float,
    mu: float,
    order: int = 3,
    divisor_floor: float = DEFAULT_DIVISOR_FLOOR,
) -> float:
    """Drift sum_{k<=order} eta_k eps^k for the attractor at frequency omega."""
    return solve_embedding(omega, e, mu, order, divisor_floor).eta(eps)


def constraint_C(
    omega: float,
    e: float,
    eps: float,
    mu: float,
    order: int = 3,
    divisor_floor: float = DEFAULT_DIVISOR_FLOOR,
) -> float:
    """Constraint C = N(e)/L(e) - eta(omega, e, eps, mu).

    Zeros of C link the eccentricity and the ellipticity of an attractor
    with the prescribed frequency.
    """
    return tidal_averages(e).eta - eta_of(omega, e, eps, mu, order, divisor_floor)


def resonance_approximant(p: int, q: int, k: int, sign: str = "above") -> ResonanceApproximant:
    """Irrational frequency p/q +/- 1/(k + gamma) next to the p:q resonance."""
    if q <= 0:
        raise DomainError(f"q must be positive, got {q}")
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    if sign not in ("above", "below"):
        raise DomainError(f"sign must be 'above' or 'below', got {sign!r}")
    if (p, q) == (1, 1) and sign == "below":
        warnings.warn(
            "approaching the 1:1 resonance from below: satellites spin down "
            "through the resonance from above, so omega < 1 attractors are "
            "physically questionable",
            stacklevel=2,
        )
    offset = 1.0 / (k + GAMMA)
    omega_k = p / q + offset if sign == "above" else p / q - offset
    return ResonanceApproximant(p=p, q=q, k=k, sign=sign, omega_k=omega_k)


@dataclass(frozen=True)
class ContourResult:
    """Zero-level points of C and the eps rows that failed to evaluate."""

    points: list[tuple[float, float]]
    failed_rows: list[float]


def contour_zero_level(
    omega: float,
    mu: float,
    order: int,
    e_range: tuple[float, float],
    eps_range: tuple[float, float],
    n_e: int,
    n_eps: int,
    divisor_floor: float = DEFAULT_DIVISOR_FLOOR,
    tol_e: float = 1e-6,
) -> ContourResult:
    """All roots of C(omega, e, eps, mu) = 0 in e, scanned row by row in eps.

    Each eps row is scanned over the e grid for sign changes, which are
    refined by bisection to |delta e| <= ``tol_e``.  Rows on which the
    embedding cannot be solved (small divisors) are recorded in
    ``failed_rows`` instead of aborting.  Rows without sign changes simply
    contribute no points.
    """
    if n_e < 16 or n_eps < 16:
        raise DomainError(f"contour grid must be at least 16x16, got {n_e}x{n_eps}")
    if not (0.0 <= e_range[0] < e_range[1] < 1.0):
        raise DomainError(f"e_range must satisfy 0 <= e_min < e_max < 1, got {e_range}")
    e_vals = np.linspace(e_range[0], e_range[1], n_e)
    eps_vals = np.linspace(eps_range[0], eps_range[1], n_eps)

    def c_of(e: float, eps: float) -> float:
        return constraint_C(omega, float(e), float(eps), mu, order, divisor_floor)

    points: list[tuple[float, float]] = []
    failed: list[float] = []
    for eps in eps_vals:
        try:
            row = [c_of(e, eps) for e in e_vals]
        except SmallDivisorError:
            failed.append(float(eps))
            continue
        for i in range(n_e - 1):
            c_lo, c_hi = row[i], row[i + 1]
            if c_lo == 0.0:
                points.append((float(e_vals[i]), float(eps)))
                continue
            if c_lo * c_hi >= 0.0:
                continue
            lo, hi = float(e_vals[i]), float(e_vals[i + 1])
            while hi - lo > tol_e:
                mid = 0.5 * (lo + hi)
                if c_of(mid, eps) * c_lo > 0.0:
                    lo = mid
                else:
                    hi = mid
            points.append((0.5 * (lo + hi), float(eps)))
        if row[-1] == 0.0:
            points.append((float(e_vals[-1]), float(eps)))
    return ContourResult(points=points, failed_rows=failed)


def embedding_jacobian_min(solution: EmbeddingSolution, eps: float, n_grid: int = 64) -> float:
    """min over a (theta, t) grid of 1 + u_theta; positive means the
    parametrization x = theta + u is a diffeomorphism in theta."""
    u_theta = solution.u_total(eps).d_theta()
    theta = np.linspace(0.0, 2.0 * math.pi, n_grid, endpoint=False)
    t = np.linspace(0.0, 2.0 * math.pi, n_grid, endpoint=False)
    values = u_theta.evaluate(theta[:, None], t[None, :])
    return float(1.0 + np.min(values))


def eta2_closed_form(omega: float, e: float, mu: float) -> float:
    """Second-order drift coefficient, closed-form reference (verbatim).

    Kept exactly as transcribed, including the third term's
    (2w-1)(mu^2 + 4(1-2w)^2) denominator; the solver oracle test compares
    against it and reports any inconsistency (see also
    :func:`eta2_resonance_sum`).
    """
    a = 1.0 - 2.5 * e * e + (13.0 / 16.0) * e**4
    b = 3.5 * e - (123.0 / 16.0) * e**3
    c = -(e * e / 6.0) * (115.0 * e * e - 51.0)
    return (
        -a * a / (2.0 * (omega - 1.0) * (mu * mu + 4.0 * (omega - 1.0) ** 2))
        - b * b / ((2.0 * omega - 3.0) * (mu * mu + (3.0 - 2.0 * omega) ** 2))
        - c * c / ((2.0 * omega - 1.0) * (mu * mu + 4.0 * (1.0 - 2.0 * omega) ** 2))
    )


def eta2_resonance_sum(omega: float, e: float, mu: float) -> float:
    """Second-order drift coefficient as the per-harmonic response sum.

    Independent derivation: each forcing harmonic sin(2th - nt) of
    amplitude g_n contributes g_n^2 / (alpha (alpha^2 + mu^2)) with
    divisor alpha = 2 omega - n.  Agrees with inverting the normalized
    frequency and with the iterative solver.
    """
    a2, a3, a4 = potential_coeffs(e)
    total = 0.0
    for amp, n in ((2.0 * a2, 2), (2.0 * a3, 3), (2.0 * a4, 4)):
        alpha = 2.0 * omega - n
        total += amp * amp / (alpha * (alpha * alpha + mu * mu))
    return total
