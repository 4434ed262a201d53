"""Pydantic request/response models for the service endpoints.

Each request model mirrors one CLI subcommand's flag set; ``params()``
returns the plain dict consumed by :mod:`spinorbit.runs`, which is also
what gets recorded in the run manifest.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field, field_validator, model_validator


class SimulateRequest(BaseModel):
    x0: float = 0.0
    y0: Optional[float] = None          # default: the drift eta(e)
    eps: float = Field(1e-3, ge=0.0)
    e: float = Field(0.06, ge=0.0, lt=1.0)
    mu: float = Field(1e-3, ge=0.0)
    eta: Optional[float] = None         # default: N(e)/L(e)
    model: Literal["trig", "exact"] = "trig"
    periods: int = Field(1000, ge=1)
    steps_per_period: int = Field(256, ge=16)

    def params(self) -> dict:
        return self.model_dump()


class GridMixin(BaseModel):
    e_min: float = Field(0.0, ge=0.0, lt=1.0)
    e_max: float = Field(0.3, gt=0.0, lt=1.0)
    n_e: int = Field(30, ge=2)
    eps_min: float = Field(0.0, ge=0.0)
    eps_max: float = Field(1e-3, gt=0.0)
    n_eps: int = Field(30, ge=2)

    @model_validator(mode="after")
    def _ordered(self):
        if self.e_max <= self.e_min:
            raise ValueError("e_max must be > e_min")
        if self.eps_max <= self.eps_min:
            raise ValueError("eps_max must be > eps_min")
        return self


class FreqMapRequest(GridMixin):
    mu: float = Field(1e-3, ge=0.0)
    periods: int = Field(12800, ge=20)
    steps_per_period: int = Field(256, ge=16)
    x0: float = 0.0
    y0: Optional[float] = None
    jobs: Optional[int] = Field(None, ge=1)

    def params(self) -> dict:
        return self.model_dump()


class NfMapRequest(GridMixin):
    def params(self) -> dict:
        return self.model_dump()


class SigmaVsTRequest(GridMixin):
    n_e: int = Field(10, ge=2)
    n_eps: int = Field(10, ge=2)
    mu: float = Field(1e-3, ge=0.0)
    T_list: list[int] = Field(default=[100, 200, 400, 800, 1600, 3200, 6400, 12800])
    steps_per_period: int = Field(256, ge=16)
    x0: float = 0.0
    y0: Optional[float] = None
    jobs: Optional[int] = Field(None, ge=1)

    @field_validator("T_list")
    @classmethod
    def _increasing(cls, value: list[int]) -> list[int]:
        if len(value) < 1 or value[0] < 20:
            raise ValueError("T_list must start at T >= 20")
        if any(b <= a for a, b in zip(value, value[1:])):
            raise ValueError("T_list must be strictly increasing")
        return value

    def params(self) -> dict:
        return self.model_dump()


class ConstraintMapRequest(BaseModel):
    p: Optional[int] = None             # both None: scan 2:1, 3:2, 4:3, 1:1
    q: Optional[int] = Field(None, ge=1)
    k_list: list[int] = Field(default=[50, 60, 70, 80, 90, 100])
    sign: Literal["above", "below", "both"] = "both"
    mu: float = Field(1e-3, gt=0.0)
    order: int = Field(3, ge=1, le=4)
    e_min: float = Field(0.0, ge=0.0, lt=1.0)
    e_max: float = Field(0.5, gt=0.0, lt=1.0)
    n_e: int = Field(64, ge=16)
    eps_min: float = Field(0.0, ge=0.0)
    eps_max: float = Field(1e-3, gt=0.0)
    n_eps: int = Field(16, ge=16)

    @model_validator(mode="after")
    def _consistent(self):
        if (self.p is None) != (self.q is None):
            raise ValueError("p and q must be given together")
        if self.e_max <= self.e_min:
            raise ValueError("e_max must be > e_min")
        if self.eps_max <= self.eps_min:
            raise ValueError("eps_max must be > eps_min")
        if any(k < 1 for k in self.k_list):
            raise ValueError("k_list entries must be >= 1")
        return self

    def params(self) -> dict:
        return self.model_dump()


class DriftTableRequest(BaseModel):
    e_min: float = Field(0.0, ge=0.0, lt=1.0)
    e_max: float = Field(0.5, gt=0.0, lt=1.0)
    n_e: int = Field(51, ge=2)
    e_values: Optional[list[float]] = None   # explicit grid overriding the range

    @model_validator(mode="after")
    def _consistent(self):
        if self.e_values is not None:
            if not self.e_values:
                raise ValueError("e_values must not be empty")
            if any(not (0.0 <= e < 1.0) for e in self.e_values):
                raise ValueError("e_values must lie in [0, 1)")
        elif self.e_max <= self.e_min:
            raise ValueError("e_max must be > e_min")
        return self

    def params(self) -> dict:
        return self.model_dump()


class RunResponse(BaseModel):
    csv: str
    manifest: dict


class HealthResponse(BaseModel):
    status: str
    version: str


REQUEST_MODELS = {
    "simulate": SimulateRequest,
    "freq-map": FreqMapRequest,
    "nf-map": NfMapRequest,
    "constraint-map": ConstraintMapRequest,
    "drift-table": DriftTableRequest,
    "sigma-vs-t": SigmaVsTRequest,
}
