"""FastAPI service exposing every run type as a POST endpoint.

Each endpoint validates a request model, executes the corresponding
runner and returns the CSV text together with its manifest.  Domain or
numerical failures surface as HTTP 500 with a structured detail body
(the CLI maps them to exit code 3); validation errors are FastAPI's
usual 422 (exit code 2).
"""

from __future__ import annotations

from fastapi import FastAPI
from fastapi.responses import JSONResponse

from . import __version__, runs
from .errors import IntegrationBlowupError, SpinOrbitError
from .schemas import (
    ConstraintMapRequest,
    DriftTableRequest,
    FreqMapRequest,
    HealthResponse,
    NfMapRequest,
    RunResponse,
    SigmaVsTRequest,
    SimulateRequest,
)

app = FastAPI(title="spinorbit service", version=__version__)


@app.exception_handler(SpinOrbitError)
async def _spinorbit_error(request, exc: SpinOrbitError):
    detail = {"error": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, IntegrationBlowupError):
        detail["k"] = exc.k
    return JSONResponse(status_code=500, content={"detail": detail})


@app.get("/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return HealthResponse(status="ok", version=__version__)


@app.post("/simulate", response_model=RunResponse)
def simulate(request: SimulateRequest) -> RunResponse:
    csv, manifest = runs.run_simulate(request.params())
    return RunResponse(csv=csv, manifest=manifest)


@app.post("/freq-map", response_model=RunResponse)
def freq_map(request: FreqMapRequest) -> RunResponse:
    csv, manifest = runs.run_freq_map(request.params())
    return RunResponse(csv=csv, manifest=manifest)


@app.post("/nf-map", response_model=RunResponse)
def nf_map(request: NfMapRequest) -> RunResponse:
    csv, manifest = runs.run_nf_map(request.params())
    return RunResponse(csv=csv, manifest=manifest)


@app.post("/constraint-map", response_model=RunResponse)
def constraint_map(request: ConstraintMapRequest) -> RunResponse:
    csv, manifest = runs.run_constraint_map(request.params())
    return RunResponse(csv=csv, manifest=manifest)


@app.post("/drift-table", response_model=RunResponse)
def drift_table(request: DriftTableRequest) -> RunResponse:
    csv, manifest = runs.run_drift_table(request.params())
    return RunResponse(csv=csv, manifest=manifest)


@app.post("/sigma-vs-t", response_model=RunResponse)
def sigma_vs_t(request: SigmaVsTRequest) -> RunResponse:
    csv, manifest = runs.run_sigma_vs_t(request.params())
    return RunResponse(csv=csv, manifest=manifest)


def serve() -> None:
    """Run the service with uvicorn (console entry point)."""
    import uvicorn

    uvicorn.run(app, host="127.0.0.1", port=8000)
