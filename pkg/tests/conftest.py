import numpy as np
import pytest

from spinorbit.dynamics import SpinOrbitParams, StroboscopicOrbit
from spinorbit.trigseries import TrigSeries2D


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)


def make_orbit(y, x=None, mu=1e-3, eta=1.0):
    """Wrap a raw y_k sequence (k = 0..T) as a StroboscopicOrbit."""
    y = np.asarray(y, dtype=float)
    x = np.zeros_like(y) if x is None else np.asarray(x, dtype=float)
    params = SpinOrbitParams(eps=0.0, e=0.0, mu=mu, eta=eta)
    return StroboscopicOrbit(
        x=x, y=y, params=params, steps_per_period=256, x0=float(x[0]), y0=float(y[0])
    )


def random_series(rng, n_terms=10, m_max=5, n_max=8, zero_average=True):
    """Random finitely supported trig series with O(1) coefficients."""
    terms = {}
    while len(terms) < n_terms:
        m = int(rng.integers(-m_max, m_max + 1))
        n = int(rng.integers(-n_max, n_max + 1))
        if zero_average and (m, n) == (0, 0):
            continue
        terms[(m, n)] = (float(rng.normal()), float(rng.normal()))
    return TrigSeries2D(terms)
