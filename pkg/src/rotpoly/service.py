"""FastAPI service exposing the pipelines.

Scalars travel as text in both directions: rationals as "p/q", floats as
decimal strings. That keeps the wire format lossless for exact mode and
byte-stable for reports.
"""
from __future__ import annotations

from typing import Literal, Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import api
from .errors import InputError
from .factorize import DETECT_TOL
from .orthosystem import DEFAULT_TOL

Arithmetic = Literal["auto", "exact", "float"]


class MeasureModel(BaseModel):
    """JSON measure descriptor: which family plus its parameters."""

    kind: Literal[
        "gaussian", "uniform-disc", "unit-circle", "explicit", "from-closed-form"
    ]
    sigma: Optional[str] = None
    radius: Optional[str] = None
    q: Optional[str] = None
    c: Optional[str] = None
    moments: Optional[list[str]] = None

    def to_descriptor(self) -> dict:
        return {k: v for k, v in self.model_dump().items() if v is not None}


class MomentsRequest(BaseModel):
    measure: MeasureModel
    n_max: int = Field(default=8, ge=0)
    arithmetic: Arithmetic = "auto"


class AlphasRequest(BaseModel):
    measure: MeasureModel
    n: int = Field(default=8, ge=1)
    arithmetic: Arithmetic = "auto"


class VerifyRequest(BaseModel):
    measure: MeasureModel
    n: int = Field(default=8, ge=1)
    m: int = Field(default=8, ge=1)
    tolerance: float = Field(default=DEFAULT_TOL, gt=0)
    arithmetic: Arithmetic = "auto"


class FactorizeRequest(BaseModel):
    measure: MeasureModel
    n: int = Field(default=8, ge=3)
    tolerance: float = Field(default=DETECT_TOL, gt=0)
    arithmetic: Arithmetic = "auto"


class LadderRequest(BaseModel):
    q: str = "1/2"
    c: str = "1"
    m: int = Field(default=8, ge=1)
    tolerance: float = Field(default=DEFAULT_TOL, gt=0)
    arithmetic: Arithmetic = "auto"


class RoundtripRequest(BaseModel):
    q: str = "1/2"
    c: str = "1"
    n: int = Field(default=8, ge=1)
    tolerance: float = Field(default=1e-9, gt=0)
    arithmetic: Arithmetic = "auto"


class MomentRow(BaseModel):
    n: int
    value: str


class MomentsResponse(BaseModel):
    arithmetic: str
    moments: list[MomentRow]


class AlphaRow(BaseModel):
    k: int
    l: int
    alpha: str
    alpha_sq: str


class AlphasResponse(BaseModel):
    arithmetic: str
    n: int
    alphas: list[AlphaRow]


class CheckResult(BaseModel):
    check: str
    max_residual: str
    passed: bool
    worst: Optional[dict] = None
    all_positive: Optional[bool] = None
    sources: Optional[list[str]] = None
    residuals: Optional[dict] = None


class VerifyResponse(BaseModel):
    arithmetic: str
    n: int
    cutoff: int
    checks: list[CheckResult]
    passed: bool


class FactorizeResponse(BaseModel):
    arithmetic: str
    n: int
    factorizable: bool
    q: Optional[str] = None
    c: Optional[str] = None
    log_residual: str
    worst_entry: list[int]
    note: Optional[str] = None


class LadderResponse(BaseModel):
    arithmetic: str
    cutoff: int
    q: str
    c: str
    checks: list[CheckResult]
    passed: bool
    note: Optional[str] = None


class RoundtripResponse(BaseModel):
    arithmetic: str
    n: int
    q: str
    c: str
    moments: list[str]
    max_discrepancy: str
    worst: Optional[dict] = None
    passed: bool


def _guard(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except InputError as exc:
        raise HTTPException(
            status_code=422,
            detail={"error": type(exc).__name__, "message": str(exc)},
        ) from exc


app = FastAPI(
    title="rotpoly",
    description=(
        "Orthonormal bivariate polynomials of rotation-invariant planar "
        "measures, their recurrence coefficients, truncated ladder "
        "representations, and q-oscillator factorization."
    ),
)


@app.post("/moments", response_model=MomentsResponse)
def moments(req: MomentsRequest):
    return _guard(
        api.run_moments, req.measure.to_descriptor(), req.n_max, req.arithmetic
    )


@app.post("/alphas", response_model=AlphasResponse)
def alphas(req: AlphasRequest):
    return _guard(api.run_alphas, req.measure.to_descriptor(), req.n, req.arithmetic)


@app.post("/verify", response_model=VerifyResponse)
def verify(req: VerifyRequest):
    return _guard(
        api.run_verify,
        req.measure.to_descriptor(),
        req.n,
        req.m,
        req.tolerance,
        req.arithmetic,
    )


@app.post("/factorize", response_model=FactorizeResponse)
def factorize(req: FactorizeRequest):
    return _guard(
        api.run_factorize,
        req.measure.to_descriptor(),
        req.n,
        req.tolerance,
        req.arithmetic,
    )


@app.post("/ladder", response_model=LadderResponse)
def ladder(req: LadderRequest):
    return _guard(api.run_ladder, req.q, req.c, req.m, req.tolerance, req.arithmetic)


@app.post("/roundtrip", response_model=RoundtripResponse)
def roundtrip(req: RoundtripRequest):
    return _guard(
        api.run_roundtrip, req.q, req.c, req.n, req.tolerance, req.arithmetic
    )
