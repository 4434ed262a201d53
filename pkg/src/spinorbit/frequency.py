"""Transient-time diagnostics: tail-averaged frequency and trend slope.

For a stroboscopic orbit the frequency reading is omega_k := y_k (the
zeroth-order frequency of the rotation).  ``estimate`` averages omega_k
over the last tenth of the orbit and fits a least-squares line through the
same window; the slope sigma quantifies how far the transient is from
being over.  ``sweep`` and ``sigma_vs_T`` run these diagnostics over
(e, eps) grids with the drift set per cell from the eccentricity.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .dynamics import DEFAULT_STEPS_PER_PERIOD, StroboscopicOrbit, potential_coeffs
from .errors import DomainError
from .kepler import tidal_averages

#: cap on cells*(T+1) doubles held in memory per kernel batch (~2 GB)
_MAX_BATCH_VALUES = 250_000_000


@dataclass(frozen=True)
class FrequencyEstimate:
    """Tail mean of omega_k, trend slope per index, and the window used."""

    omega_num: float
    sigma: float
    window: tuple[int, int]


def omega_sequence(orbit: StroboscopicOrbit) -> np.ndarray:
    """Frequency readings omega_k = y_k for k = 0..T."""
    if len(orbit.y) == 0:
        raise DomainError("orbit has no samples")
    return orbit.y.copy()


def tail_window(periods: int) -> tuple[int, int]:
    """Inclusive index range [ceil(9T/10), T] of the last tenth."""
    k0 = (9 * periods + 9) // 10
    return k0, periods


def tail_stats(y: np.ndarray) -> FrequencyEstimate:
    """Estimate from a raw omega_k sequence indexed k = 0..T."""
    periods = len(y) - 1
    if periods < 10:
        raise DomainError(f"need at least 10 periods, got {periods}")
    k0, k1 = tail_window(periods)
    if k1 - k0 + 1 < 3:
        raise DomainError(
            f"tail window [{k0}, {k1}] has fewer than 3 samples; increase T"
        )
    tail = y[k0:]
    omega_num = float(np.mean(tail))
    k = np.arange(k0, k1 + 1, dtype=float)
    kc = k - k.mean()
    sigma = float(np.dot(kc, tail - omega_num) / np.dot(kc, kc))
    return FrequencyEstimate(omega_num=omega_num, sigma=sigma, window=(k0, k1))


def estimate(orbit: StroboscopicOrbit) -> FrequencyEstimate:
    """Tail mean and least-squares slope of omega_k over the last tenth."""
    return tail_stats(omega_sequence(orbit))


@dataclass(frozen=True)
class SweepTable:
    """Row-major grid diagnostics: one row per (e, eps) cell.

    Cells whose integration blew up carry NaN in ``omega_num``/``sigma``.
    """

    e: np.ndarray
    eps: np.ndarray
    omega_num: np.ndarray
    sigma: np.ndarray
    e_grid: np.ndarray
    eps_grid: np.ndarray
    mu: float
    periods: int
    steps_per_period: int


@contextmanager
def _thread_cap(jobs: int | None):
    if jobs is None:
        yield
        return
    import numba

    previous = numba.get_num_threads()
    numba.set_num_threads(max(1, min(int(jobs), numba.config.NUMBA_NUM_THREADS)))
    try:
        yield
    finally:
        numba.set_num_threads(previous)


def _grid_cells(mu, e_grid, eps_grid, x0, y0):
    """Flattened row-major cell parameter arrays (e outer, eps inner)."""
    n_e, n_eps = len(e_grid), len(eps_grid)
    n_cells = n_e * n_eps
    cells = {
        "x0": np.full(n_cells, float(x0)),
        "y0": np.empty(n_cells),
        "eps": np.empty(n_cells),
        "mu": np.full(n_cells, float(mu)),
        "eta": np.empty(n_cells),
        "a2": np.empty(n_cells),
        "a3": np.empty(n_cells),
        "a4": np.empty(n_cells),
        "e": np.empty(n_cells),
    }
    for i, e in enumerate(e_grid):
        eta = tidal_averages(float(e)).eta
        a2, a3, a4 = potential_coeffs(float(e))
        rows = slice(i * n_eps, (i + 1) * n_eps)
        cells["e"][rows] = e
        cells["eta"][rows] = eta
        cells["y0"][rows] = eta if y0 is None else float(y0)
        cells["a2"][rows] = a2
        cells["a3"][rows] = a3
        cells["a4"][rows] = a4
        cells["eps"][rows] = eps_grid
    return cells


def _integrate_grid(cells, periods, steps_per_period, jobs):
    """Stroboscopic y samples for every cell, batched to bound memory."""
    n_cells = len(cells["e"])
    ys = np.empty((n_cells, periods + 1))
    batch = max(1, _MAX_BATCH_VALUES // (periods + 1))
    with _thread_cap(jobs):
        for start in range(0, n_cells, batch):
            sel = slice(start, min(start + batch, n_cells))
            ys[sel] = _kernels.rk4_trig_grid(
                cells["x0"][sel], cells["y0"][sel], cells["eps"][sel],
                cells["mu"][sel], cells["eta"][sel],
                cells["a2"][sel], cells["a3"][sel], cells["a4"][sel],
                periods, steps_per_period,
            )
    return ys


def _stats_per_cell(ys: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    omega = np.empty(ys.shape[0])
    sigma = np.empty(ys.shape[0])
    for c in range(ys.shape[0]):
        row = ys[c]
        if not np.all(np.isfinite(row)):
            omega[c] = np.nan
            sigma[c] = np.nan
            continue
        est = tail_stats(row)
        omega[c] = est.omega_num
        sigma[c] = est.sigma
    return omega, sigma


def sweep(
    mu: float,
    periods: int,
    e_range: tuple[float, float],
    eps_range: tuple[float, float],
    n_e: int,
    n_eps: int,
    steps_per_period: int = DEFAULT_STEPS_PER_PERIOD,
    x0: float = 0.0,
    y0: float | None = None,
    jobs: int | None = None,
) -> SweepTable:
    """Grid of (omega_num, sigma) over the trig-truncated model.

    The drift is set per cell from the eccentricity (eta = N/L); the
    default initial condition is x0 = 0, y0 = eta(e), i.e. on the eps = 0
    attractor.  Cells are integrated in parallel; blown-up cells yield NaN
    rows instead of aborting the sweep.  Ordering is row-major with e as
    the outer loop, so output is deterministic.
    """
    if n_e < 2 or n_eps < 2:
        raise DomainError(f"grid must be at least 2x2, got {n_e}x{n_eps}")
    if periods < 20:
        raise DomainError(f"sweep needs periods >= 20 for the tail window, got {periods}")
    e_grid = np.linspace(e_range[0], e_range[1], n_e)
    eps_grid = np.linspace(eps_range[0], eps_range[1], n_eps)
    cells = _grid_cells(mu, e_grid, eps_grid, x0, y0)
    ys = _integrate_grid(cells, int(periods), int(steps_per_period), jobs)
    omega, sigma = _stats_per_cell(ys)
    return SweepTable(
        e=cells["e"], eps=cells["eps"], omega_num=omega, sigma=sigma,
        e_grid=e_grid, eps_grid=eps_grid, mu=float(mu),
        periods=int(periods), steps_per_period=int(steps_per_period),
    )


def sigma_vs_T(
    mu: float,
    e_range: tuple[float, float],
    eps_range: tuple[float, float],
    n_e: int,
    n_eps: int,
    T_list: tuple[int, ...] = (100, 200, 400, 800, 1600, 3200, 6400, 12800),
    steps_per_period: int = DEFAULT_STEPS_PER_PERIOD,
    x0: float = 0.0,
    y0: float | None = None,
    jobs: int | None = None,
) -> list[tuple[int, float]]:
    """max |sigma| over the grid for each integration length T.

    A fixed-step trajectory restarted at the same initial condition
    retraces itself, so one integration to max(T_list) provides every
    shorter T as a prefix.
    """
    T_list = tuple(int(T) for T in T_list)
    if any(b <= a for a, b in zip(T_list, T_list[1:])):
        raise DomainError(f"T_list must be strictly increasing, got {T_list}")
    if T_list[0] < 20:
        raise DomainError(f"smallest T must be >= 20, got {T_list[0]}")
    if n_e < 2 or n_eps < 2:
        raise DomainError(f"grid must be at least 2x2, got {n_e}x{n_eps}")
    e_grid = np.linspace(e_range[0], e_range[1], n_e)
    eps_grid = np.linspace(eps_range[0], eps_range[1], n_eps)
    cells = _grid_cells(mu, e_grid, eps_grid, x0, y0)
    ys = _integrate_grid(cells, T_list[-1], int(steps_per_period), jobs)
    out = []
    for T in T_list:
        _, sigma = _stats_per_cell(ys[:, : T + 1])
        finite = sigma[np.isfinite(sigma)]
        out.append((T, float(np.max(np.abs(finite))) if len(finite) else float("nan")))
    return out
