"""CSV and manifest production for every run type.

The service endpoints and the CLI share these runners so that a given
parameter set always produces byte-identical CSV text: floats are
formatted with 17 significant digits (lossless double round-trip), rows
are emitted in deterministic grid order, and failed cells print NaN.
"""

from __future__ import annotations

import json
import math
from typing import Iterable

from . import __version__, frequency, normalform, parametrization
from .dynamics import SpinOrbitParams, integrate
from .errors import NearResonanceError, SmallDivisorError
from .kepler import drift_series, tidal_averages

import numpy as np


def format_float(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    return f"{x:.17g}"


def make_csv(header: Iterable[str], rows: Iterable[tuple]) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(format_float(v) if isinstance(v, float) else str(v) for v in row))
    return "\n".join(lines) + "\n"


def make_manifest(subcommand: str, params: dict, outputs: list[str] | None = None) -> dict:
    return {
        "tool": "spinorbit",
        "version": __version__,
        "subcommand": subcommand,
        "params": params,
        "deterministic": True,
        "outputs": outputs or [],
    }


def manifest_json(manifest: dict) -> str:
    return json.dumps(manifest, indent=2, sort_keys=True) + "\n"


# ---- runners: params dict -> (csv text, manifest) ------------------------

def run_simulate(p: dict) -> tuple[str, dict]:
    eta = p["eta"] if p.get("eta") is not None else tidal_averages(p["e"]).eta
    params = SpinOrbitParams(eps=p["eps"], e=p["e"], mu=p["mu"], eta=eta, model=p["model"])
    y0 = p["y0"] if p.get("y0") is not None else eta
    orbit = integrate(p["x0"], y0, params, p["periods"], p["steps_per_period"])
    rows = zip(orbit.k.tolist(), orbit.x.tolist(), orbit.y.tolist())
    return make_csv(("k", "x", "y"), rows), make_manifest("simulate", p)


def run_freq_map(p: dict) -> tuple[str, dict]:
    table = frequency.sweep(
        mu=p["mu"], periods=p["periods"],
        e_range=(p["e_min"], p["e_max"]), eps_range=(p["eps_min"], p["eps_max"]),
        n_e=p["n_e"], n_eps=p["n_eps"],
        steps_per_period=p["steps_per_period"],
        x0=p["x0"], y0=p.get("y0"), jobs=p.get("jobs"),
    )
    rows = zip(table.e.tolist(), table.eps.tolist(),
               table.omega_num.tolist(), table.sigma.tolist())
    return make_csv(("e", "eps", "omega_num", "sigma"), rows), make_manifest("freq-map", p)


def run_nf_map(p: dict) -> tuple[str, dict]:
    e_grid = np.linspace(p["e_min"], p["e_max"], p["n_e"])
    eps_grid = np.linspace(p["eps_min"], p["eps_max"], p["n_eps"])
    rows = []
    for e in e_grid:
        for eps in eps_grid:
            try:
                value = normalform.omega_app(float(eps), float(e))
            except NearResonanceError:
                value = math.nan
            rows.append((float(e), float(eps), value))
    return make_csv(("e", "eps", "omega_app"), rows), make_manifest("nf-map", p)


def run_drift_table(p: dict) -> tuple[str, dict]:
    if p.get("e_values"):
        e_grid = [float(e) for e in p["e_values"]]
    else:
        e_grid = np.linspace(p["e_min"], p["e_max"], p["n_e"]).tolist()
    rows = []
    for e in e_grid:
        averages = tidal_averages(e)
        rows.append((e, averages.lbar, averages.nbar, averages.eta, drift_series(e)))
    header = ("e", "lbar", "nbar", "eta_exact", "eta_series")
    return make_csv(header, rows), make_manifest("drift-table", p)


def run_sigma_vs_t(p: dict) -> tuple[str, dict]:
    ladder = frequency.sigma_vs_T(
        mu=p["mu"],
        e_range=(p["e_min"], p["e_max"]), eps_range=(p["eps_min"], p["eps_max"]),
        n_e=p["n_e"], n_eps=p["n_eps"],
        T_list=tuple(p["T_list"]),
        steps_per_period=p["steps_per_period"],
        x0=p["x0"], y0=p.get("y0"), jobs=p.get("jobs"),
    )
    rows = [(int(T), float(sig)) for T, sig in ladder]
    return make_csv(("T", "max_abs_sigma"), rows), make_manifest("sigma-vs-t", p)


#: default resonances scanned by the constraint map
DEFAULT_RESONANCES = ((2, 1), (3, 2), (4, 3), (1, 1))


def run_constraint_map(p: dict) -> tuple[str, dict]:
    if p.get("p") is not None and p.get("q") is not None:
        resonances = [(int(p["p"]), int(p["q"]))]
    else:
        resonances = list(DEFAULT_RESONANCES)
    rows = []
    for pp, qq in resonances:
        if p["sign"] == "both":
            # the 1:1 resonance is approached only from above (spin-down history)
            signs = ("above",) if (pp, qq) == (1, 1) else ("above", "below")
        else:
            signs = (p["sign"],)
        for sign in signs:
            for k in p["k_list"]:
                approx = parametrization.resonance_approximant(pp, qq, int(k), sign)
                try:
                    result = parametrization.contour_zero_level(
                        approx.omega_k, p["mu"], p["order"],
                        (p["e_min"], p["e_max"]), (p["eps_min"], p["eps_max"]),
                        p["n_e"], p["n_eps"],
                    )
                except SmallDivisorError:
                    rows.append((pp, qq, int(k), sign, approx.omega_k, math.nan, math.nan))
                    continue
                for e_root, eps in result.points:
                    rows.append((pp, qq, int(k), sign, approx.omega_k, eps, e_root))
                for eps in result.failed_rows:
                    rows.append((pp, qq, int(k), sign, approx.omega_k, eps, math.nan))
    header = ("p", "q", "k", "sign", "omega", "eps", "e")
    return make_csv(header, rows), make_manifest("constraint-map", p)


RUNNERS = {
    "simulate": run_simulate,
    "freq-map": run_freq_map,
    "nf-map": run_nf_map,
    "constraint-map": run_constraint_map,
    "drift-table": run_drift_table,
    "sigma-vs-t": run_sigma_vs_t,
}
