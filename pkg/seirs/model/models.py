"""
SEIRS model data types: coefficients, state vector and the invariant population box.
"""

import math
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from config.settings import get_settings
from seirs.errors import ModelValidationError, NegativeStateError, NonFiniteStateError
from seirs.periodic import PeriodicCoefficient


# ==================== Parameters ====================

class ModelParams(BaseModel):
    """
    The six omega-periodic coefficients of the SEIRS system.

    lam, mu, beta, eps must be strictly positive over a period; eta, gamma nonnegative.
    All six share `period`.
    """

    model_config = ConfigDict(frozen=True)

    lam: PeriodicCoefficient = Field(..., description="Recruitment rate Lambda(t)")
    mu: PeriodicCoefficient = Field(..., description="Natural death rate mu(t)")
    beta: PeriodicCoefficient = Field(..., description="Transmission coefficient beta(t)")
    eta: PeriodicCoefficient = Field(..., description="Loss of immunity rate eta(t)")
    eps: PeriodicCoefficient = Field(..., description="Rate of becoming infective epsilon(t)")
    gamma: PeriodicCoefficient = Field(..., description="Recovery rate gamma(t)")
    period: float = Field(..., gt=0.0, description="Common period omega")

    @model_validator(mode="after")
    def _check_hypotheses(self) -> "ModelParams":
        for name in ("lam", "mu", "beta", "eta", "eps", "gamma"):
            coefficient: PeriodicCoefficient = getattr(self, name)
            if not math.isclose(coefficient.period, self.period, rel_tol=1e-12):
                raise ValueError(f"{name} has period {coefficient.period}, model period is {self.period}")
        for name in ("lam", "mu", "beta", "eps"):
            lower, _ = getattr(self, name).extrema()
            if lower <= 0.0:
                raise ValueError(f"{name} must be strictly positive on [0, omega] (min {lower:g})")
        for name in ("eta", "gamma"):
            lower, _ = getattr(self, name).extrema()
            if lower < 0.0:
                raise ValueError(f"{name} must be nonnegative on [0, omega] (min {lower:g})")
        return self

    def rates(self, t: float) -> Tuple[float, float, float, float, float, float]:
        """(Lambda, mu, beta, eta, eps, gamma) at time t"""
        return (
            self.lam.evaluate(t),
            self.mu.evaluate(t),
            self.beta.evaluate(t),
            self.eta.evaluate(t),
            self.eps.evaluate(t),
            self.gamma.evaluate(t),
        )

    def bars(self) -> "BarParameters":
        return BarParameters(
            lam=self.lam.mean(),
            mu=self.mu.mean(),
            beta=self.beta.mean(),
            eta=self.eta.mean(),
            eps=self.eps.mean(),
            gamma=self.gamma.mean(),
        )

    def with_beta(self, beta: PeriodicCoefficient) -> "ModelParams":
        fields = {name: getattr(self, name) for name in ("lam", "mu", "eta", "eps", "gamma", "period")}
        return ModelParams(beta=beta, **fields)

    def population_bounds(self) -> Tuple[float, float]:
        """[Lambda^l / mu^u, Lambda^u / mu^l], the invariant interval for N"""
        lam_lower, lam_upper = self.lam.extrema()
        mu_lower, mu_upper = self.mu.extrema()
        return lam_lower / mu_upper, lam_upper / mu_lower


class BarParameters(BaseModel):
    """Period averages of the six coefficients"""

    model_config = ConfigDict(frozen=True)

    lam: float
    mu: float
    beta: float
    eta: float
    eps: float
    gamma: float

    @property
    def population(self) -> float:
        """Lambda_bar / mu_bar"""
        return self.lam / self.mu


# ==================== State ====================

@dataclass(frozen=True)
class StateVec:
    """Point (S, E, I, R) of the model; N = S + E + I + R"""

    s: float
    e: float
    i: float
    r: float

    def __post_init__(self) -> None:
        values = (self.s, self.e, self.i, self.r)
        if not all(math.isfinite(v) for v in values):
            raise NonFiniteStateError(f"non-finite state {values}")
        if any(v < 0.0 for v in values):
            raise NegativeStateError(f"negative state {values}")

    @property
    def n(self) -> float:
        return self.s + self.e + self.i + self.r

    def as_array(self) -> np.ndarray:
        return np.array([self.s, self.e, self.i, self.r], dtype=float)

    def as_tuple(self) -> Tuple[float, float, float, float]:
        return (self.s, self.e, self.i, self.r)

    @classmethod
    def from_values(cls, values: Iterable[float], slack: Optional[float] = None) -> "StateVec":
        """Build from four numbers, clamping negative round-off smaller than `slack`"""
        slack = get_settings().NEGATIVE_SLACK if slack is None else slack
        arr = np.asarray(list(values), dtype=float)
        if arr.shape != (4,):
            raise ValueError(f"state needs 4 components, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise NonFiniteStateError(f"non-finite state {arr.tolist()}")
        if np.any(arr < -slack):
            raise NegativeStateError(f"state component below -{slack:g}: {arr.tolist()}")
        arr = np.where(arr < 0.0, 0.0, arr)
        return cls(*(float(v) for v in arr))


# ==================== Invariant box ====================

@dataclass(frozen=True)
class InvariantBox:
    """
    Region {0 <= S, I <= N, n_lower <= N <= n_upper} on which the incidence
    hypotheses are stated.
    """

    n_lower: float
    n_upper: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.n_lower) and math.isfinite(self.n_upper)):
            raise ModelValidationError("invariant box bounds must be finite")
        if self.n_lower <= 0.0:
            raise ModelValidationError(f"invariant box lower bound must be positive, got {self.n_lower:g}")
        if self.n_lower >= self.n_upper:
            raise ModelValidationError(
                f"degenerate invariant box: lower {self.n_lower:g} >= upper {self.n_upper:g}"
            )

    @classmethod
    def from_params(cls, params: ModelParams, collapse_margin: Optional[float] = None) -> "InvariantBox":
        """
        Box from [Lambda^l/mu^u, Lambda^u/mu^l]; a collapsed interval (constant
        Lambda and mu) is widened by +-collapse_margin relative.
        """
        lower, upper = params.population_bounds()
        if upper - lower <= 1e-12 * upper:
            margin = get_settings().BOX_COLLAPSE_MARGIN if collapse_margin is None else collapse_margin
            centre = 0.5 * (lower + upper)
            lower, upper = centre * (1.0 - margin), centre * (1.0 + margin)
        return cls(n_lower=lower, n_upper=upper)


# ==================== Hypothesis audit ====================

class HypothesisCheck(BaseModel):
    """Outcome of one grid-based hypothesis check"""

    name: str = Field(..., description="smoothness | boundary | saturation | monotonicity | ratio_monotonicity")
    passed: bool
    detail: str = ""
    witness: Optional[Dict[str, float]] = Field(None, description="Grid point (S, N, I) where the check failed")


class HypothesisReport(BaseModel):
    """Grid audit of an incidence function on an invariant box"""

    family: str
    grid_density: int
    n_lower: float
    n_upper: float
    c1: float = Field(..., description="Tightest lower bound of phi/(S*I) found on the grid")
    c2: float = Field(..., description="Tightest upper bound of phi/(S*I) found on the grid")
    empirical_constants: bool = False
    checks: List[HypothesisCheck] = Field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> HypothesisCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)
