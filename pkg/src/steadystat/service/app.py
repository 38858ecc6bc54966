"""HTTP service exposing the analysis pipeline.

Endpoints:

* ``POST /analyze``  -- run transient detection plus the convergence
  verdict on an uploaded table or on inline sample arrays; the response
  body is exactly the document the CLI prints.
* ``POST /generate`` -- deterministic synthetic series as JSON arrays.
* ``GET  /health``   -- liveness and version probe.

Domain errors surface as HTTP 422 with the error class name, so a thin
client can map them onto its usage-error exit path.
"""

from __future__ import annotations

import tempfile
import os
from typing import Any, Dict, List, Optional, Union

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field, model_validator

from .. import __version__
from ..core import AnalysisConfig, validate_series
from ..errors import AnalysisError
from ..ingest import read_table
from ..pipeline import assess
from ..report import build_document
from ..synth import SignalSpec, generate

ColumnRef = Union[None, int, str]


# ----------------------------------------------------------------------
# request models
# ----------------------------------------------------------------------

class AnalyzeRequest(BaseModel):
    """Input series plus the analysis configuration.

    Exactly one of ``content`` (raw table text, parsed like a file) or
    ``values`` (numeric samples, with optional ``times``) must be given.
    """

    content: Optional[str] = None
    values: Optional[List[float]] = None
    times: Optional[List[float]] = None
    path: Optional[str] = Field(
        default=None, description="display name echoed into the report"
    )

    time_col: ColumnRef = None
    value_col: ColumnRef = None
    delimiter: str = "auto"
    header: Optional[bool] = None

    confidence: float = 0.95
    tolerance: float = 1e-3
    min_filter_length: int = 2
    strategy: str = "majority_vote"
    acf_truncation: str = "full"
    trend_check: bool = True
    detection_threshold: Optional[float] = None

    @model_validator(mode="after")
    def _exactly_one_source(self) -> "AnalyzeRequest":
        if (self.content is None) == (self.values is None):
            raise ValueError("provide exactly one of 'content' or 'values'")
        if self.values is None and self.times is not None:
            raise ValueError("'times' only accompanies 'values'")
        return self


class GenerateRequest(BaseModel):
    """Recipe for one synthetic record; mirrors the generator flags."""

    kind: str
    n: int
    seed: int = 0
    mean: float = 0.3
    sd: float = 0.0066
    dt: float = 1.0
    transient_end: float = 200.0
    transient_amplitude: float = 0.05
    transient_period: float = 40.0
    phi: float = 0.0


# ----------------------------------------------------------------------
# response models (field order matches the printed document)
# ----------------------------------------------------------------------

class InputSection(BaseModel):
    samples: int
    path: Optional[str] = None
    time_column: Optional[str] = None
    value_column: Optional[str] = None


class ConfigSection(BaseModel):
    confidence: float
    tolerance: float
    min_filter_length: int
    candidate_strategy: str
    acf_truncation: str
    trend_check_enabled: bool
    detection_threshold: Optional[float] = None


class LevelSelectionModel(BaseModel):
    level_index: int
    level_length: int
    index_in_level: int
    t_min: float
    mapped_index: int
    fallback: bool


class CandidateModel(BaseModel):
    level_index: int
    index_in_level: int
    rmse_value: float
    local_spread: Optional[float] = None
    validated: bool
    mapped_time: float
    selected: bool


class TransientSection(BaseModel):
    t_cut: float
    cut_index: int
    steady_fraction: float
    strategy_used: str
    level_selections: List[LevelSelectionModel]
    candidates: List[CandidateModel]


class ConvergenceSection(BaseModel):
    mean: Optional[float] = None
    sample_sd: Optional[float] = None
    n: int
    n_eff: Optional[float] = None
    sem: Optional[float] = None
    sem_eff: Optional[float] = None
    t_value: Optional[float] = None
    ci_half_width: Optional[float] = None
    ci_half_width_plain: Optional[float] = None
    slope: Optional[float] = None
    slope_per_time: Optional[float] = None
    accumulated_drift: Optional[float] = None
    ci_ok: Optional[bool] = None
    trend_ok: Optional[bool] = None
    converged: bool
    detail: Optional[str] = None


class AnalyzeResponse(BaseModel):
    schema_version: str
    status: str
    input: InputSection
    config: ConfigSection
    transient: TransientSection
    convergence: ConvergenceSection


class GenerateResponse(BaseModel):
    kind: str
    n: int
    seed: int
    times: List[float]
    values: List[float]


class HealthResponse(BaseModel):
    status: str
    version: str


# ----------------------------------------------------------------------
# application
# ----------------------------------------------------------------------

def _series_from_request(req: AnalyzeRequest):
    if req.values is not None:
        series = validate_series(req.values, req.times)
        return series, None, None
    with tempfile.NamedTemporaryFile(
        "w", suffix=".table", delete=False, encoding="utf-8"
    ) as fh:
        fh.write(req.content)
        tmp_path = fh.name
    try:
        res = read_table(
            tmp_path,
            time_col=req.time_col,
            value_col=req.value_col,
            delimiter=req.delimiter,
            header=req.header,
        )
    finally:
        os.unlink(tmp_path)
    return res.series, res.time_column, res.value_column


def create_app() -> FastAPI:
    app = FastAPI(
        title="steadystat",
        version=__version__,
        description="Transient removal and convergence verdicts for "
        "simulation time series.",
    )

    @app.exception_handler(AnalysisError)
    async def _analysis_error(request: Request, exc: AnalysisError) -> JSONResponse:
        return JSONResponse(
            status_code=422,
            content={"error": type(exc).__name__, "detail": str(exc)},
        )

    @app.exception_handler(ValueError)
    async def _value_error(request: Request, exc: ValueError) -> JSONResponse:
        return JSONResponse(
            status_code=422,
            content={"error": "ValueError", "detail": str(exc)},
        )

    @app.post("/analyze", response_model=AnalyzeResponse)
    def analyze(req: AnalyzeRequest) -> Dict[str, Any]:
        config = AnalysisConfig(
            confidence=req.confidence,
            tolerance=req.tolerance,
            min_filter_length=req.min_filter_length,
            candidate_strategy=req.strategy,
            acf_truncation=req.acf_truncation,
            trend_check_enabled=req.trend_check,
            detection_threshold=req.detection_threshold,
        )
        series, time_column, value_column = _series_from_request(req)
        result = assess(series, config)
        source = {
            "path": req.path,
            "time_column": time_column,
            "value_column": value_column,
        }
        return build_document(result, config, samples=len(series), source=source)

    @app.post("/generate", response_model=GenerateResponse)
    def generate_series(req: GenerateRequest) -> Dict[str, Any]:
        spec = SignalSpec(
            kind=req.kind,
            n=req.n,
            seed=req.seed,
            mean=req.mean,
            sd=req.sd,
            dt=req.dt,
            transient_end=req.transient_end,
            transient_amplitude=req.transient_amplitude,
            transient_period=req.transient_period,
            phi=req.phi,
        )
        series = generate(spec)
        return {
            "kind": spec.kind,
            "n": spec.n,
            "seed": spec.seed,
            "times": series.times.tolist(),
            "values": series.values.tolist(),
        }

    @app.get("/health", response_model=HealthResponse)
    def health() -> Dict[str, str]:
        return {"status": "ok", "version": __version__}

    return app


app = create_app()
