"""
Run configuration: a TOML file parsed into pydantic models.

Unknown keys are rejected everywhere. Example:

    seed = 7
    output_dir = "out/cell"

    [model]
    period = 1.0
    lambda = { constant = 2.0 }
    mu = { constant = 2.0 }
    eta = { constant = 0.0 }
    eps = { constant = 1.0 }
    gamma = { constant = 0.02 }

    [model.beta]
    constant = 6.9
    [[model.beta.harmonic]]
    amplitude = 4.14
    k = 1
    phase = 0.0

    [incidence]
    family = "michaelis_menten"
    contact = "N / (1 + N)"
"""

import logging

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from config.settings import get_settings
from seirs.errors import ConfigError, ModelValidationError
from seirs.model.incidence import IncidenceFamily, IncidenceSpec, build_incidence
from seirs.model.models import ModelParams, StateVec
from seirs.model.presets import FORCED_CELLS, INITIAL_CONDITIONS
from seirs.periodic import Harmonic, PeriodicCoefficient

logger = logging.getLogger(__name__)

Quadruple = Tuple[float, float, float, float]

PUBLISHED_INITIAL_CONDITIONS: List[Quadruple] = [x.as_tuple() for x in INITIAL_CONDITIONS]


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


# ==================== Model ====================

class HarmonicConfig(_Strict):
    amplitude: float
    k: int = Field(1, ge=1)
    phase: float = 0.0


class CoefficientConfig(_Strict):
    """constant + sum of [[harmonic]] cosine terms"""

    constant: float
    harmonic: List[HarmonicConfig] = Field(default_factory=list)

    def to_coefficient(self, period: float) -> PeriodicCoefficient:
        return PeriodicCoefficient(
            constant=self.constant,
            harmonics=tuple(Harmonic(amplitude=h.amplitude, k=h.k, phase=h.phase) for h in self.harmonic),
            period=period,
        )


class ModelConfig(_Strict):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    period: float = Field(1.0, gt=0.0)
    lam: CoefficientConfig = Field(..., alias="lambda")
    mu: CoefficientConfig
    beta: CoefficientConfig
    eta: CoefficientConfig
    eps: CoefficientConfig
    gamma: CoefficientConfig

    def to_params(self, beta: Optional[PeriodicCoefficient] = None) -> ModelParams:
        return ModelParams(
            lam=self.lam.to_coefficient(self.period),
            mu=self.mu.to_coefficient(self.period),
            beta=beta if beta is not None else self.beta.to_coefficient(self.period),
            eta=self.eta.to_coefficient(self.period),
            eps=self.eps.to_coefficient(self.period),
            gamma=self.gamma.to_coefficient(self.period),
            period=self.period,
        )


class IncidenceConfig(_Strict):
    """`family` plus its parameters: alpha (holling_ii, saturated_power), p and q
    (power_law, saturated_power), contact C(N) (michaelis_menten)"""

    family: IncidenceFamily = IncidenceFamily.MASS_ACTION
    alpha: Optional[float] = None
    p: Optional[float] = None
    q: Optional[float] = None
    contact: Optional[str] = None

    @model_validator(mode="after")
    def _check_family_keys(self) -> "IncidenceConfig":
        needed = {
            IncidenceFamily.MICHAELIS_MENTEN: ("contact",),
            IncidenceFamily.POWER_LAW: ("p", "q"),
            IncidenceFamily.SATURATED_POWER: ("p", "q"),
        }.get(self.family, ())
        missing = [key for key in needed if getattr(self, key) is None]
        if missing:
            raise ValueError(f"incidence family {self.family.value} needs {', '.join(missing)}")
        if self.family == IncidenceFamily.CUSTOM:
            raise ValueError("custom incidence cannot be configured from a file")
        return self

    def to_spec(self) -> IncidenceSpec:
        options = {k: v for k, v in (("alpha", self.alpha), ("p", self.p), ("q", self.q),
                                     ("contact", self.contact)) if v is not None}
        return build_incidence(self.family, **options)


# ==================== Commands ====================

class SimulateConfig(_Strict):
    horizon: float = Field(100.0, ge=0.0)
    samples: int = Field(2001, ge=1, description="Rows per trajectory, evenly spaced on [0, horizon]")
    initial_conditions: List[Quadruple] = Field(default_factory=lambda: list(PUBLISHED_INITIAL_CONDITIONS))
    random_initial: int = Field(0, ge=0, description="Extra seeded random initial conditions in the invariant box")
    rel_tol: Optional[float] = None
    abs_tol: Optional[float] = None

    @model_validator(mode="after")
    def _nonnegative_states(self) -> "SimulateConfig":
        for x in self.initial_conditions:
            if any(v < 0.0 for v in x):
                raise ValueError(f"initial condition {x} has a negative component")
        return self


class AnalysisConfig(_Strict):
    r0_tol: Optional[float] = None
    critical_band: Optional[float] = None
    burn_in: float = Field(100.0, ge=0.0)
    persistence_horizon: float = Field(200.0, gt=0.0)
    n_initial: int = Field(10, ge=1)
    k_lower: Optional[float] = Field(None, gt=0.0, description="Overrides the simulated persistence floor")


class OrbitConfig(_Strict):
    guess: Optional[Quadruple] = None
    max_newton: Optional[int] = Field(None, ge=1)
    samples: Optional[int] = Field(None, ge=2)
    prerun_periods: Optional[int] = Field(None, ge=0)


class SweepConfig(_Strict):
    """beta(t) = beta * (1 + amplitude * cos(2 pi t / period + phase)) over the grid"""

    beta: List[float] = Field(..., min_length=1)
    amplitude: List[float] = Field(default_factory=lambda: [0.0], min_length=1)
    phase: List[float] = Field(default_factory=lambda: [0.0], min_length=1)


class HypothesesConfig(_Strict):
    grid_density: Optional[int] = Field(None, ge=4)


class FiguresConfig(_Strict):
    horizon: float = Field(100.0, gt=0.0)
    samples: int = Field(2001, ge=2)
    cells: List[Tuple[float, float]] = Field(default_factory=lambda: list(FORCED_CELLS))


class RunConfig(_Strict):
    seed: int = Field(default_factory=lambda: get_settings().DEFAULT_SEED)
    output_dir: str = Field(default_factory=lambda: get_settings().OUTPUT_DIRECTORY)
    jobs: int = Field(default_factory=lambda: get_settings().JOBS, ge=1)
    tol: Optional[float] = Field(None, gt=0.0, le=1e-2, description="Integration relative tolerance")
    model: Optional[ModelConfig] = None
    incidence: IncidenceConfig = Field(default_factory=IncidenceConfig)
    simulate: SimulateConfig = Field(default_factory=SimulateConfig)
    analysis: AnalysisConfig = Field(default_factory=AnalysisConfig)
    orbit: OrbitConfig = Field(default_factory=OrbitConfig)
    sweep: Optional[SweepConfig] = None
    hypotheses: HypothesesConfig = Field(default_factory=HypothesesConfig)
    figures: FiguresConfig = Field(default_factory=FiguresConfig)

    def require_model(self) -> ModelConfig:
        if self.model is None:
            raise ConfigError("this command needs a [model] section")
        return self.model

    def params(self) -> ModelParams:
        return _build(lambda: self.require_model().to_params())

    def incidence_spec(self) -> IncidenceSpec:
        return _build(self.incidence.to_spec)


def _build(factory):
    try:
        return factory()
    except ConfigError:
        raise
    except (ValidationError, ModelValidationError, ValueError) as e:
        raise ConfigError(f"invalid model configuration: {e}") from e


def load_config(
    path: Optional[Union[str, Path]] = None,
    overrides: Optional[Dict[str, Any]] = None,
) -> RunConfig:
    """
    Read and validate a run configuration; CLI overrides (seed, output_dir, jobs,
    tol) replace file values when not None. Any failure becomes ConfigError.
    """
    raw: Dict[str, Any] = {}
    if path is not None:
        try:
            with open(path, "rb") as f:
                raw = tomllib.load(f)
        except (OSError, tomllib.TOMLDecodeError) as e:
            logger.error(f"[CLI] Cannot read config {path}: {e}")
            raise ConfigError(f"cannot read config {path}: {e}") from e

    for key, value in (overrides or {}).items():
        if value is not None:
            raw[key] = value

    try:
        config = RunConfig.model_validate(raw)
    except ValidationError as e:
        logger.error(f"[CLI] Invalid config {path}: {e.error_count()} error(s)")
        raise ConfigError(f"invalid config {path}: {e}") from e

    if config.model is not None:
        config.params()
    config.incidence_spec()
    return config


def initial_states(config: SimulateConfig) -> List[StateVec]:
    return [StateVec(*x) for x in config.initial_conditions]
