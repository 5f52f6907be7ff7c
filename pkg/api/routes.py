"""
API routes for periodic-seirs

Read-only computations over the library; request bodies use the same schema
as the `[model]` and `[incidence]` sections of a run configuration.
"""

import logging
from typing import Any, Dict, Optional

from fastapi import APIRouter, HTTPException, Query, status
from pydantic import BaseModel, Field, ValidationError

from seirs import __version__
from seirs.cli.commands import analysis_document
from seirs.cli.config import IncidenceConfig, ModelConfig
from seirs.endemic import existence_report
from seirs.errors import ConfigError, ModelValidationError, NoEndemicRootError, SeirsError
from seirs.model import HypothesisReport, InvariantBox, check_hypotheses
from seirs.threshold import r0_bacaer_approx

logger = logging.getLogger(__name__)

api_router = APIRouter()

MAX_GRID_DENSITY = 256


# ==================== Request / Response Models ====================

class AnalyzeRequest(BaseModel):
    """Model coefficients and incidence family"""

    model: ModelConfig
    incidence: IncidenceConfig = Field(default_factory=IncidenceConfig)


class HypothesesRequest(AnalyzeRequest):
    grid_density: Optional[int] = Field(None, ge=4, le=MAX_GRID_DENSITY)


class ApproxResponse(BaseModel):
    beta: float
    eps: float
    mu: float
    gamma: float
    b: float
    r0_approx: float


def _http_error(e: Exception) -> HTTPException:
    """Library error -> HTTP status"""
    if isinstance(e, (ModelValidationError, ConfigError, ValidationError)):
        code = status.HTTP_422_UNPROCESSABLE_ENTITY
    elif isinstance(e, NoEndemicRootError):
        code = status.HTTP_409_CONFLICT
    else:
        code = status.HTTP_500_INTERNAL_SERVER_ERROR
    return HTTPException(status_code=code, detail=f"{type(e).__name__}: {e}")


def _build(request: AnalyzeRequest):
    try:
        return request.model.to_params(), request.incidence.to_spec()
    except (ValidationError, SeirsError, ValueError) as e:
        logger.error(f"[API] Invalid model: {e}")
        raise _http_error(e)


# ==================== Endpoints ====================

@api_router.get("/")
async def api_root():
    """API module root endpoint"""
    return {
        "message": "periodic-seirs API",
        "version": __version__,
    }


@api_router.get("/r0/approx", response_model=ApproxResponse)
async def r0_approx(
    beta: float = Query(..., gt=0.0),
    eps: float = Query(..., gt=0.0),
    mu: float = Query(..., gt=0.0),
    gamma: float = Query(..., ge=0.0),
    b: float = Query(0.0, ge=0.0, lt=1.0),
) -> ApproxResponse:
    """Small-amplitude approximation of R0 for beta(t) = beta (1 + b cos 2 pi t)"""
    value = r0_bacaer_approx(beta, eps, mu, gamma, b)
    return ApproxResponse(beta=beta, eps=eps, mu=mu, gamma=gamma, b=b, r0_approx=value)


@api_router.post("/analyze")
def analyze(request: AnalyzeRequest) -> Dict[str, Any]:
    """R0, algebraic point, det M and the existence verdict"""
    params, inc = _build(request)
    logger.info(f"[API] analyze {inc.label}")
    try:
        report = existence_report(params, inc)
    except SeirsError as e:
        logger.error(f"[API] analyze failed: {e}")
        raise _http_error(e)
    return analysis_document(report, inc.label)


@api_router.post("/hypotheses", response_model=HypothesisReport)
def hypotheses(request: HypothesesRequest) -> HypothesisReport:
    """Grid audit of the incidence hypotheses on the invariant box of the model"""
    params, inc = _build(request)
    logger.info(f"[API] hypotheses {inc.label}")
    try:
        return check_hypotheses(inc, InvariantBox.from_params(params), grid_density=request.grid_density)
    except SeirsError as e:
        logger.error(f"[API] hypotheses failed: {e}")
        raise _http_error(e)
