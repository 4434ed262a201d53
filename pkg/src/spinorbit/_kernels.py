"""Numba-compiled fixed-step RK4 kernels.

The stroboscopic integrations dominate the runtime of every sweep, so the
inner loops are JIT-compiled.  A pure-Python reference right-hand side
lives in :mod:`spinorbit.dynamics`; the test suite cross-checks the two.

Time for step j of period k is computed as 2*pi*k + j*h from the integers
rather than accumulated, so stroboscopic samples land on exact multiples
of 2*pi and rounding does not drift with T.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit, prange

TWO_PI = 2.0 * math.pi


@njit(cache=True, inline="always")
def _accel_trig(x, y, t, eps, mu, eta, a2, a3, a4):
    force = a2 * math.sin(2.0 * x - 2.0 * t) \
        + a3 * math.sin(2.0 * x - 3.0 * t) \
        + a4 * math.sin(2.0 * x - 4.0 * t)
    return -2.0 * eps * force - mu * (y - eta)


@njit(cache=True, inline="always")
def _true_anomaly_radius(t, e):
    """Lifted true anomaly f(t) and (a/r)^3 by an inline Kepler solve."""
    n_rev = math.floor(t / TWO_PI)
    ell = t - TWO_PI * n_rev
    u = ell + e * math.sin(ell)
    for _ in range(50):
        g = u - e * math.sin(u) - ell
        if abs(g) <= 1e-14:
            break
        u -= g / (1.0 - e * math.cos(u))
    r_over_a = 1.0 - e * math.cos(u)
    f = math.atan2(math.sqrt(1.0 - e * e) * math.sin(u), math.cos(u) - e)
    f += TWO_PI * round((u - f) / TWO_PI)
    return f + TWO_PI * n_rev, 1.0 / (r_over_a * r_over_a * r_over_a)


@njit(cache=True, inline="always")
def _accel_exact(x, y, t, eps, mu, eta, e):
    f, inv_r3 = _true_anomaly_radius(t, e)
    return -eps * inv_r3 * math.sin(2.0 * x - 2.0 * f) - mu * (y - eta)


@njit(cache=True)
def rk4_trig(x0, y0, eps, mu, eta, a2, a3, a4, n_periods, spp):
    h = TWO_PI / spp
    xs = np.empty(n_periods + 1)
    ys = np.empty(n_periods + 1)
    x, y = x0, y0
    xs[0] = x
    ys[0] = y
    for k in range(n_periods):
        base = TWO_PI * k
        for j in range(spp):
            t = base + j * h
            k1x = y
            k1y = _accel_trig(x, y, t, eps, mu, eta, a2, a3, a4)
            xm1 = x + 0.5 * h * k1x
            ym1 = y + 0.5 * h * k1y
            k2x = ym1
            k2y = _accel_trig(xm1, ym1, t + 0.5 * h, eps, mu, eta, a2, a3, a4)
            xm2 = x + 0.5 * h * k2x
            ym2 = y + 0.5 * h * k2y
            k3x = ym2
            k3y = _accel_trig(xm2, ym2, t + 0.5 * h, eps, mu, eta, a2, a3, a4)
            xm3 = x + h * k3x
            ym3 = y + h * k3y
            k4x = ym3
            k4y = _accel_trig(xm3, ym3, t + h, eps, mu, eta, a2, a3, a4)
            x += h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
            y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y)
        xs[k + 1] = x
        ys[k + 1] = y
        if not (math.isfinite(x) and math.isfinite(y)):
            for kk in range(k + 2, n_periods + 1):
                xs[kk] = math.nan
                ys[kk] = math.nan
            break
    return xs, ys


@njit(cache=True)
def rk4_exact(x0, y0, eps, mu, eta, e, n_periods, spp):
    h = TWO_PI / spp
    xs = np.empty(n_periods + 1)
    ys = np.empty(n_periods + 1)
    x, y = x0, y0
    xs[0] = x
    ys[0] = y
    for k in range(n_periods):
        base = TWO_PI * k
        for j in range(spp):
            t = base + j * h
            k1x = y
            k1y = _accel_exact(x, y, t, eps, mu, eta, e)
            xm1 = x + 0.5 * h * k1x
            ym1 = y + 0.5 * h * k1y
            k2x = ym1
            k2y = _accel_exact(xm1, ym1, t + 0.5 * h, eps, mu, eta, e)
            xm2 = x + 0.5 * h * k2x
            ym2 = y + 0.5 * h * k2y
            k3x = ym2
            k3y = _accel_exact(xm2, ym2, t + 0.5 * h, eps, mu, eta, e)
            xm3 = x + h * k3x
            ym3 = y + h * k3y
            k4x = ym3
            k4y = _accel_exact(xm3, ym3, t + h, eps, mu, eta, e)
            x += h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
            y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y)
        xs[k + 1] = x
        ys[k + 1] = y
        if not (math.isfinite(x) and math.isfinite(y)):
            for kk in range(k + 2, n_periods + 1):
                xs[kk] = math.nan
                ys[kk] = math.nan
            break
    return xs, ys


@njit(cache=True, parallel=True)
def rk4_trig_grid(x0s, y0s, epss, mus, etas, a2s, a3s, a4s, n_periods, spp):
    """Integrate independent trig-model cells in parallel; returns y samples.

    Cells write disjoint rows, so the output is deterministic regardless of
    thread scheduling.
    """
    n_cells = x0s.shape[0]
    ys = np.empty((n_cells, n_periods + 1))
    h = TWO_PI / spp
    for c in prange(n_cells):
        x = x0s[c]
        y = y0s[c]
        eps = epss[c]
        mu = mus[c]
        eta = etas[c]
        a2 = a2s[c]
        a3 = a3s[c]
        a4 = a4s[c]
        ys[c, 0] = y
        blown = False
        for k in range(n_periods):
            if blown:
                ys[c, k + 1] = math.nan
                continue
            base = TWO_PI * k
            for j in range(spp):
                t = base + j * h
                k1x = y
                k1y = _accel_trig(x, y, t, eps, mu, eta, a2, a3, a4)
                xm1 = x + 0.5 * h * k1x
                ym1 = y + 0.5 * h * k1y
                k2x = ym1
                k2y = _accel_trig(xm1, ym1, t + 0.5 * h, eps, mu, eta, a2, a3, a4)
                xm2 = x + 0.5 * h * k2x
                ym2 = y + 0.5 * h * k2y
                k3x = ym2
                k3y = _accel_trig(xm2, ym2, t + 0.5 * h, eps, mu, eta, a2, a3, a4)
                xm3 = x + h * k3x
                ym3 = y + h * k3y
                k4x = ym3
                k4y = _accel_trig(xm3, ym3, t + h, eps, mu, eta, a2, a3, a4)
                x += h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
                y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y)
            ys[c, k + 1] = y
            if not (math.isfinite(x) and math.isfinite(y)):
                blown = True
    return ys
