"""Finite real trigonometric series in two angles (theta, t).

A series is a finite map from integer wave pairs (m, n) to real (cos, sin)
coefficient pairs representing

    sum_{(m,n)} c_{mn} cos(m*theta + n*t) + s_{mn} sin(m*theta + n*t).

Waves are stored canonically with m > 0, or m = 0 and n >= 0, folding
(-m, -n) into (m, n) via cos(-phi) = cos(phi), sin(-phi) = -sin(phi).
Series values are immutable; every operation returns a new series.

Supported algebra: sum, difference, scalar multiple, product (exact
product-to-sum expansion), d/dtheta, the flow derivative
D = omega0*d/dtheta + d/dt, averaging, and inversion of D^2 + mu*D on
zero-average series.
"""

from __future__ import annotations

import math
from collections.abc import Iterator, Mapping

import numpy as np

from .errors import NonZeroAverageError, SmallDivisorError

Wave = tuple[int, int]

#: coefficients below this fraction of the largest magnitude are dropped
PRUNE_RATIO = 1e-16


def _canonical(m: int, n: int, c: float, s: float) -> tuple[int, int, float, float]:
    if m < 0 or (m == 0 and n < 0):
        return -m, -n, c, -s
    return m, n, c, s


class TrigSeries2D:
    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Wave, tuple[float, float]] | None = None):
        acc: dict[Wave, list[float]] = {}
        if terms:
            for (m, n), (c, s) in terms.items():
                mm, nn, cc, ss = _canonical(int(m), int(n), float(c), float(s))
                pair = acc.setdefault((mm, nn), [0.0, 0.0])
                pair[0] += cc
                pair[1] += ss
        self._terms = self._pruned(acc)

    @staticmethod
    def _pruned(acc: Mapping[Wave, list[float]]) -> dict[Wave, tuple[float, float]]:
        peak = 0.0
        for c, s in acc.values():
            peak = max(peak, abs(c), abs(s))
        if peak == 0.0:
            return {}
        cutoff = peak * PRUNE_RATIO
        out: dict[Wave, tuple[float, float]] = {}
        for wave in sorted(acc):
            c, s = acc[wave]
            if wave == (0, 0):
                s = 0.0  # sin(0) contributes nothing
                if abs(c) <= cutoff:
                    continue
            elif max(abs(c), abs(s)) <= cutoff:
                continue
            out[wave] = (c, s)
        return out

    # ---- constructors -------------------------------------------------
    @classmethod
    def zero(cls) -> "TrigSeries2D":
        return cls()

    @classmethod
    def constant(cls, value: float) -> "TrigSeries2D":
        return cls({(0, 0): (value, 0.0)})

    @classmethod
    def harmonic(cls, m: int, n: int, cos: float = 0.0, sin: float = 0.0) -> "TrigSeries2D":
        return cls({(m, n): (cos, sin)})

    # ---- inspection ----------------------------------------------------
    @property
    def terms(self) -> dict[Wave, tuple[float, float]]:
        return dict(self._terms)

    @property
    def support(self) -> set[Wave]:
        return set(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple[Wave, tuple[float, float]]]:
        return iter(sorted(self._terms.items()))

    def coefficient(self, m: int, n: int) -> tuple[float, float]:
        mm, nn, c, s = _canonical(m, n, 1.0, 1.0)
        cc, ss = self._terms.get((mm, nn), (0.0, 0.0))
        # c, s here carry the sign flips of the canonicalization
        return cc * c, ss * s

    def average(self) -> float:
        """Mean over the torus: the (0, 0) cos coefficient."""
        return self._terms.get((0, 0), (0.0, 0.0))[0]

    def max_abs_coefficient(self) -> float:
        return max((max(abs(c), abs(s)) for c, s in self._terms.values()), default=0.0)

    def without_average(self) -> "TrigSeries2D":
        """The series with its constant term removed exactly."""
        if (0, 0) not in self._terms:
            return self
        out = TrigSeries2D.zero()
        out._terms = {w: cs for w, cs in self._terms.items() if w != (0, 0)}
        return out

    # ---- algebra -------------------------------------------------------
    def __add__(self, other: "TrigSeries2D") -> "TrigSeries2D":
        acc = {w: [c, s] for w, (c, s) in self._terms.items()}
        for w, (c, s) in other._terms.items():
            pair = acc.setdefault(w, [0.0, 0.0])
            pair[0] += c
            pair[1] += s
        out = TrigSeries2D.zero()
        out._terms = self._pruned(acc)
        return out

    def __sub__(self, other: "TrigSeries2D") -> "TrigSeries2D":
        return self + other.scale(-1.0)

    def __neg__(self) -> "TrigSeries2D":
        return self.scale(-1.0)

    def scale(self, factor: float) -> "TrigSeries2D":
        out = TrigSeries2D.zero()
        out._terms = {w: (c * factor, s * factor) for w, (c, s) in self._terms.items()}
        if factor == 0.0:
            out._terms = {}
        return out

    def __mul__(self, other: "TrigSeries2D | float | int") -> "TrigSeries2D":
        if isinstance(other, (int, float)):
            return self.scale(float(other))
        acc: dict[Wave, list[float]] = {}

        def add(m: int, n: int, c: float, s: float) -> None:
            mm, nn, cc, ss = _canonical(m, n, c, s)
            pair = acc.setdefault((mm, nn), [0.0, 0.0])
            pair[0] += cc
            pair[1] += ss

        for (m1, n1), (c1, s1) in self._terms.items():
            for (m2, n2), (c2, s2) in other._terms.items():
                # product-to-sum: contributions at w1 + w2 and w1 - w2
                add(m1 + m2, n1 + n2, 0.5 * (c1 * c2 - s1 * s2), 0.5 * (c1 * s2 + s1 * c2))
                add(m1 - m2, n1 - n2, 0.5 * (c1 * c2 + s1 * s2), 0.5 * (s1 * c2 - c1 * s2))
        out = TrigSeries2D.zero()
        out._terms = self._pruned(acc)
        return out

    __rmul__ = __mul__

    def d_theta(self) -> "TrigSeries2D":
        """Partial derivative with respect to the first angle."""
        out = TrigSeries2D.zero()
        out._terms = self._pruned(
            {(m, n): [m * s, -m * c] for (m, n), (c, s) in self._terms.items()}
        )
        return out

    def apply_D(self, omega0: float) -> "TrigSeries2D":
        """Flow derivative D = omega0*d/dtheta + d/dt.

        cos(m*theta + n*t) -> -(omega0*m + n) sin(...) and
        sin(m*theta + n*t) -> +(omega0*m + n) cos(...).
        """
        acc: dict[Wave, list[float]] = {}
        for (m, n), (c, s) in self._terms.items():
            alpha = omega0 * m + n
            acc[(m, n)] = [alpha * s, -alpha * c]
        out = TrigSeries2D.zero()
        out._terms = self._pruned(acc)
        return out

    def invert_D2_muD(
        self, omega0: float, mu: float, divisor_floor: float = 1e-4
    ) -> "TrigSeries2D":
        """Solve D^2 u + mu*D u = self for u with zero average.

        Requires a zero-average right-hand side and |omega0*m + n| >=
        ``divisor_floor`` on the whole support.  Per harmonic with
        alpha = omega0*m + n and source coefficients (Sc, Ss):

            u_c = -(alpha*Sc + mu*Ss) / (alpha*(alpha^2 + mu^2))
            u_s =  (mu*Sc - alpha*Ss) / (alpha*(alpha^2 + mu^2))
        """
        if divisor_floor <= 0.0:
            raise ValueError("divisor_floor must be positive")
        peak = self.max_abs_coefficient()
        if abs(self.average()) > PRUNE_RATIO * max(peak, 1.0):
            raise NonZeroAverageError(
                f"right-hand side has non-zero average {self.average():.3e}"
            )
        acc: dict[Wave, list[float]] = {}
        for (m, n), (sc, ss) in self._terms.items():
            if (m, n) == (0, 0):
                continue
            alpha = omega0 * m + n
            if abs(alpha) < divisor_floor:
                raise SmallDivisorError((m, n), alpha, divisor_floor)
            den = alpha * (alpha * alpha + mu * mu)
            acc[(m, n)] = [-(alpha * sc + mu * ss) / den, (mu * sc - alpha * ss) / den]
        out = TrigSeries2D.zero()
        out._terms = self._pruned(acc)
        return out

    # ---- evaluation and output ------------------------------------------
    def evaluate(self, theta, t):
        """Numerical value at (theta, t); broadcasts over numpy arrays."""
        theta = np.asarray(theta, dtype=float)
        t = np.asarray(t, dtype=float)
        total = np.zeros(np.broadcast(theta, t).shape)
        for (m, n), (c, s) in self._terms.items():
            phase = m * theta + n * t
            total = total + c * np.cos(phase) + s * np.sin(phase)
        if total.ndim == 0:
            return float(total)
        return total

    def dump(self) -> str:
        """One term per line: ``m n c s`` with round-trip float formatting."""
        lines = [f"{m} {n} {c:.16e} {s:.16e}" for (m, n), (c, s) in self]
        return "\n".join(lines)

    def allclose(self, other: "TrigSeries2D", tol: float = 1e-12) -> bool:
        waves = self.support | other.support
        scale = max(self.max_abs_coefficient(), other.max_abs_coefficient(), 1e-300)
        for m, n in waves:
            c1, s1 = self._terms.get((m, n), (0.0, 0.0))
            c2, s2 = other._terms.get((m, n), (0.0, 0.0))
            if max(abs(c1 - c2), abs(s1 - s2)) > tol * scale:
                return False
        return True

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TrigSeries2D):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(sorted(self._terms.items())))

    def __repr__(self) -> str:
        if not self._terms:
            return "TrigSeries2D(0)"
        bits = []
        for (m, n), (c, s) in self:
            bits.append(f"({m},{n}): ({c:.6g}, {s:.6g})")
        return "TrigSeries2D{" + ", ".join(bits) + "}"
