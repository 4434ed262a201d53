"""Closed-form normalized frequency of the dissipative spin-orbit flow.

At normalization order 3 the frequency in the normalized variables is

    Omega(Y; eps) = Y - eps^2 / (8 (Y-1)^3)
        + eps^2 * [ e^2/8   * (   5/(Y-1)^3 +   98/(3-2Y)^3 )
                  + e^4/64  * ( -63/(Y-1)^3 + 3444/(2Y-3)^3 - 578/(Y-2)^3 )
                  + e^6/768 * ( 390/(Y-1)^3 + 45387/(3-2Y)^3 + 31280/(Y-2)^3 ) ]

with poles at Y in {1, 3/2, 2}.  Replacing Y by the truncated drift series
eta(e) gives the frequency map over the (e, eps) plane, independent of mu.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NearResonanceError
from .kepler import drift_series

#: roots of the denominators (Y-1)^3, (3-2Y)^3 / (2Y-3)^3, (Y-2)^3
SINGULAR_Y = (1.0, 1.5, 2.0)

#: frequencies closer than this to a pole are rejected
GUARD_RADIUS = 1e-3


@dataclass(frozen=True)
class NormalFormFrequency:
    value: float
    singular_distance: float


def singular_distance(y: float) -> float:
    """Distance of Y to the nearest pole of the normalized frequency."""
    return min(abs(y - s) for s in SINGULAR_Y)


def omega_normalized(y: float, eps: float, e: float) -> NormalFormFrequency:
    """Order-3 normalized frequency Omega(Y; eps) at eccentricity e.

    Raises :class:`~spinorbit.errors.NearResonanceError` when Y is within
    ``GUARD_RADIUS`` of a pole, mirroring the white zones of the frequency
    maps where the non-resonant expansion breaks down.
    """
    dist = singular_distance(y)
    if dist < GUARD_RADIUS:
        raise NearResonanceError(y, dist, GUARD_RADIUS)
    p1 = (y - 1.0) ** 3
    p32 = (3.0 - 2.0 * y) ** 3      # = -(2y-3)^3
    p2 = (y - 2.0) ** 3
    e2 = e * e
    eps2 = eps * eps
    value = y - eps2 / (8.0 * p1) + eps2 * (
        e2 / 8.0 * (5.0 / p1 + 98.0 / p32)
        + e2 * e2 / 64.0 * (-63.0 / p1 + 3444.0 / (-p32) - 578.0 / p2)
        + e2 * e2 * e2 / 768.0 * (31280.0 / p2 + 390.0 / p1 + 45387.0 / p32)
    )
    return NormalFormFrequency(value=value, singular_distance=dist)


def omega_app(eps: float, e: float) -> float:
    """Frequency map Omega_app(eps, e) = Omega(eta_series(e); eps).

    Uses the truncated drift series for Y (the exact quotient differs at
    O(e^8)); independent of mu.  Near-resonant eccentricities (including
    e = 0, where eta = 1 sits exactly on a pole) raise
    :class:`~spinorbit.errors.NearResonanceError`.
    """
    return omega_normalized(drift_series(e), eps, e).value
