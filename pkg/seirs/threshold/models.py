"""
Disease-free solution and reproduction-ratio report types
"""

from dataclasses import dataclass
from enum import Enum
from typing import Callable, List, Tuple, Union

import numpy as np
from pydantic import BaseModel, Field

ArrayLike = Union[float, np.ndarray]


class Classification(str, Enum):
    EXTINCTION = "Extinction"
    ENDEMIC = "Endemic"
    CRITICAL = "Critical"

    @classmethod
    def of(cls, value: float, band: float) -> "Classification":
        """Side of 1 that `value` lies on; within `band` of 1 is Critical"""
        if abs(value - 1.0) <= band:
            return cls.CRITICAL
        return cls.ENDEMIC if value > 1.0 else cls.EXTINCTION


@dataclass(frozen=True)
class DfeSolution:
    """Periodic disease-free susceptible level S*(t)"""

    s_star: Callable[[ArrayLike], ArrayLike]
    y0: float
    period: float
    closed_form: bool = False

    def __call__(self, t: ArrayLike) -> ArrayLike:
        return self.s_star(t)


class R0Report(BaseModel):
    """Periodic basic reproduction ratio and the monodromy threshold"""

    rho_fv: float = Field(..., description="Spectral radius of the monodromy matrix of F - V")
    r0: float = Field(..., description="Reproduction ratio: the lambda with rho(Phi_{F/lambda - V}(omega)) = 1")
    classification: Classification
    bisection_residual: float = Field(..., description="rho(Phi_{F/r0 - V}(omega)) - 1")
    bracket: Tuple[float, float] = Field(
        (0.0, 0.0), description="Initial bisection bracket, one doubling or halving step of the geometric search"
    )
    iterations: int = 0


class AttractivityReport(BaseModel):
    """Terminal distance to the disease-free solution over random initial conditions"""

    n_initial: int
    horizon: float
    tol: float
    deviations: List[float]
    max_deviation: float
    max_final_infective: float
    converged: bool = Field(..., description="max_deviation < tol")
