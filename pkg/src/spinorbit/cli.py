"""Command-line client for the spinorbit service.

Every subcommand builds a request, posts it to the service (an in-process
instance by default, or a remote one via --server), and writes the
returned CSV next to a JSON manifest capturing the full parameter set.
Re-running with an identical invocation, or from the manifest alone via
--from-manifest, reproduces byte-identical output.

Exit codes: 0 success, 2 bad flags/parameters, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys
from pathlib import Path

import httpx

from . import runs


def _parse_config_value(raw: str):
    raw = raw.strip()
    if "," in raw:
        return [_parse_config_value(v) for v in raw.split(",")]
    try:
        return int(raw)
    except ValueError:
        pass
    try:
        return float(raw)
    except ValueError:
        return raw


def _load_config(path: str) -> dict:
    values = {}
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, _, raw = line.partition("=")
        if not _:
            raise SystemExit(f"config line without '=': {line!r}")
        values[key.strip().replace("-", "_")] = _parse_config_value(raw)
    return values


def _int_list(raw: str) -> list[int]:
    return [int(v) for v in raw.split(",")]


def _float_list(raw: str) -> list[float]:
    return [float(v) for v in raw.split(",")]


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--out", required=True, help="output CSV path")
    sub.add_argument("--server", default=None,
                     help="base URL of a running service (default: in-process)")
    sub.add_argument("--config", default=None,
                     help="key=value file supplying defaults; flags override")
    sub.add_argument("--from-manifest", default=None,
                     help="re-run with the parameter set of an existing manifest")


def _add_grid(sub: argparse.ArgumentParser, e_max: float | None = None) -> None:
    sub.add_argument("--e-min", type=float)
    sub.add_argument("--e-max", type=float, default=e_max)
    sub.add_argument("--n-e", type=int)
    sub.add_argument("--eps-min", type=float)
    sub.add_argument("--eps-max", type=float)
    sub.add_argument("--n-eps", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinorbit",
        description="Dissipative spin-orbit runs: stroboscopic orbits, "
                    "frequency maps, drift tables and attractor constraints.",
    )
    subs = parser.add_subparsers(dest="subcommand", required=True)

    sim = subs.add_parser("simulate", help="one stroboscopic orbit -> CSV of (k, x, y)")
    sim.add_argument("--x0", type=float)
    sim.add_argument("--y0", type=float)
    sim.add_argument("--eps", type=float)
    sim.add_argument("--e", type=float)
    sim.add_argument("--mu", type=float)
    sim.add_argument("--eta", type=float, help="override the drift (default N(e)/L(e))")
    sim.add_argument("--model", choices=("trig", "exact"))
    sim.add_argument("--T", "--periods", dest="periods", type=int)
    sim.add_argument("--steps-per-period", type=int)
    _add_common(sim)

    fmap = subs.add_parser("freq-map", help="(e, eps) grid of omega_num and sigma")
    fmap.add_argument("--mu", type=float)
    fmap.add_argument("--T", "--periods", dest="periods", type=int)
    fmap.add_argument("--steps-per-period", type=int)
    fmap.add_argument("--x0", type=float)
    fmap.add_argument("--y0", type=float)
    fmap.add_argument("--jobs", type=int)
    _add_grid(fmap)
    _add_common(fmap)

    nfmap = subs.add_parser("nf-map", help="(e, eps) grid of the normalized frequency")
    _add_grid(nfmap)
    _add_common(nfmap)

    cmap = subs.add_parser("constraint-map", help="zero-level contours of the drift constraint")
    cmap.add_argument("--p", type=int)
    cmap.add_argument("--q", type=int)
    cmap.add_argument("--k-list", type=_int_list)
    cmap.add_argument("--sign", choices=("above", "below", "both"))
    cmap.add_argument("--mu", type=float)
    cmap.add_argument("--K", dest="order", type=int)
    _add_grid(cmap)
    _add_common(cmap)

    dtable = subs.add_parser("drift-table", help="e, L, N, exact and series drift")
    dtable.add_argument("--e-min", type=float)
    dtable.add_argument("--e-max", type=float)
    dtable.add_argument("--n-e", type=int)
    dtable.add_argument("--e-values", type=_float_list)
    _add_common(dtable)

    svt = subs.add_parser("sigma-vs-t", help="max |sigma| over a grid vs integration time")
    svt.add_argument("--mu", type=float)
    svt.add_argument("--T-list", dest="T_list", type=_int_list)
    svt.add_argument("--steps-per-period", type=int)
    svt.add_argument("--x0", type=float)
    svt.add_argument("--y0", type=float)
    svt.add_argument("--jobs", type=int)
    _add_grid(svt)
    _add_common(svt)

    return parser


ENDPOINTS = {
    "simulate": "/simulate",
    "freq-map": "/freq-map",
    "nf-map": "/nf-map",
    "constraint-map": "/constraint-map",
    "drift-table": "/drift-table",
    "sigma-vs-t": "/sigma-vs-t",
}

_META_KEYS = {"subcommand", "out", "server", "config", "from_manifest"}


def _build_payload(args: argparse.Namespace) -> dict:
    if args.from_manifest:
        manifest = json.loads(Path(args.from_manifest).read_text())
        if manifest.get("subcommand") != args.subcommand:
            raise SystemExit(
                f"manifest is for {manifest.get('subcommand')!r}, not {args.subcommand!r}"
            )
        return dict(manifest["params"])
    payload = {}
    if args.config:
        payload.update(_load_config(args.config))
    for key, value in vars(args).items():
        if key in _META_KEYS or value is None:
            continue
        payload[key] = value
    return payload


def _post(server: str | None, path: str, payload: dict) -> httpx.Response:
    if server:
        with httpx.Client(base_url=server, timeout=None) as client:
            return client.post(path, json=payload)

    from .service import app  # imported lazily: pulls in the compute stack

    async def go() -> httpx.Response:
        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(
            transport=transport, base_url="http://spinorbit.internal", timeout=None
        ) as client:
            return await client.post(path, json=payload)

    return asyncio.run(go())


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    payload = _build_payload(args)
    response = _post(args.server, ENDPOINTS[args.subcommand], payload)

    if response.status_code in (400, 422):
        print(f"invalid parameters: {response.json()['detail']}", file=sys.stderr)
        return 2
    if response.status_code != 200:
        try:
            detail = response.json().get("detail", {})
        except ValueError:
            detail = {"message": response.text}
        message = detail.get("message", detail) if isinstance(detail, dict) else detail
        print(f"numerical failure: {message}", file=sys.stderr)
        if isinstance(detail, dict) and "k" in detail:
            print(f"failing stroboscopic index k = {detail['k']}", file=sys.stderr)
        return 3

    body = response.json()
    out_path = Path(args.out)
    manifest_path = out_path.with_suffix(".manifest.json")
    out_path.parent.mkdir(parents=True, exist_ok=True)
    out_path.write_text(body["csv"])
    manifest = body["manifest"]
    manifest["outputs"] = [str(out_path), str(manifest_path)]
    manifest_path.write_text(runs.manifest_json(manifest))
    print(f"wrote {out_path} and {manifest_path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
