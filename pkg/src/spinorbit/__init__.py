"""Numerical laboratory for the dissipative spin-orbit problem."""

__version__ = "0.1.0"

from .dynamics import SpinOrbitParams, SpinState, StroboscopicOrbit, integrate
from .frequency import FrequencyEstimate, estimate, omega_sequence, sigma_vs_T, sweep
from .kepler import (
    KeplerPoint,
    TidalAverages,
    drift_exact,
    drift_series,
    orbit_point,
    solve_kepler,
    tidal_averages,
)
from .normalform import NormalFormFrequency, omega_app, omega_normalized
from .parametrization import (
    EmbeddingSolution,
    ResonanceApproximant,
    constraint_C,
    contour_zero_level,
    eta_of,
    resonance_approximant,
    solve_embedding,
)
from .trigseries import TrigSeries2D

__all__ = [
    "__version__",
    "SpinOrbitParams",
    "SpinState",
    "StroboscopicOrbit",
    "integrate",
    "FrequencyEstimate",
    "estimate",
    "omega_sequence",
    "sweep",
    "sigma_vs_T",
    "KeplerPoint",
    "TidalAverages",
    "solve_kepler",
    "orbit_point",
    "tidal_averages",
    "drift_exact",
    "drift_series",
    "NormalFormFrequency",
    "omega_normalized",
    "omega_app",
    "EmbeddingSolution",
    "ResonanceApproximant",
    "solve_embedding",
    "eta_of",
    "constraint_C",
    "resonance_approximant",
    "contour_zero_level",
    "TrigSeries2D",
]
