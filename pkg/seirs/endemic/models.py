"""
Endemic analysis report types
"""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Optional

import numpy as np
from pydantic import BaseModel, Field

from seirs.model.models import BarParameters, StateVec
from seirs.ode.models import Trajectory
from seirs.threshold.models import R0Report


class EndemicAlgebraicPoint(BaseModel):
    """Positive solution (p, q, r, s) of the period-averaged equilibrium system"""

    r: float = Field(..., description="Endemic I level")
    p: float = Field(..., description="Endemic S level, Lambda/mu - d r")
    q: float = Field(..., description="Endemic E level, (mu + gamma) r / eps")
    s: float = Field(..., description="Endemic R level, gamma r / (mu + eta)")
    d: float = Field(..., description="Combination constant")
    d0: float = Field(..., description="Upper end Lambda/mu / d of the root interval")
    averaged_r0: float = Field(..., description="Reproduction number of the averaged autonomous system")
    bars: BarParameters

    @property
    def population(self) -> float:
        return self.p + self.q + self.r + self.s

    def as_array(self) -> np.ndarray:
        """(S, E, I, R) ordering"""
        return np.array([self.p, self.q, self.r, self.s])


class ThresholdMatrix(BaseModel):
    """The 4x4 matrix M at the algebraic point with its determinant"""

    matrix: List[List[float]]
    det: float
    k110: float
    k010: float
    k011: float

    def as_array(self) -> np.ndarray:
        return np.array(self.matrix, dtype=float)

    @property
    def frobenius_norm(self) -> float:
        return float(np.linalg.norm(self.as_array()))


class ClosedFormDeterminant(BaseModel):
    """Closed-form det M for families where one is known"""

    value: float
    rule: str = Field(..., description="n_independent | michaelis_menten")
    includes_beta: bool = Field(..., description="False when the display omits the beta_bar factor")


class AprioriBounds(BaseModel):
    """Outer bounds on periodic solutions in log coordinates"""

    a1_xi: float
    a1_chi: float
    a2_xi: float
    a2_chi: float
    a3_xi: float
    a3_chi: float
    a4_xi: float
    a4_chi: float
    m0: float
    m1: float
    m2: float
    m3: float
    m4: float
    radius: float = Field(..., description="M0 + M1 + M2 + M3 + M4")
    k_lower: float
    c1: float
    c2: float


class PersistenceReport(BaseModel):
    """Empirical lower bound of I after a burn-in"""

    k_lower: float = Field(..., description="Safety factor times the observed minimum; 0 when degenerate")
    min_infective: float
    degenerate: bool
    reason: str = ""
    n_initial: int
    burn_in: float
    horizon: float


class Verdict(str, Enum):
    ENDEMIC_GUARANTEED = "EndemicGuaranteed"
    EXTINCTION_GUARANTEED = "ExtinctionGuaranteed"
    INCONCLUSIVE = "Inconclusive"


class ThresholdReport(BaseModel):
    """Reproduction ratio, algebraic point, matrix M and the existence verdict"""

    r0_report: R0Report
    point: Optional[EndemicAlgebraicPoint] = None
    threshold_matrix: Optional[ThresholdMatrix] = None
    det_closed_form: Optional[ClosedFormDeterminant] = None
    det_nonzero: bool = False
    comparison_quantity: float
    verdict: Verdict
    notes: List[str] = Field(default_factory=list)


@dataclass(frozen=True)
class PeriodicOrbit:
    """Fixed point of the period map with the orbit through it"""

    anchor: StateVec
    residual: float
    floquet_moduli: List[float]
    orbit: Trajectory
    period: float
    newton_iterations: int
    used_fallback: bool
    endemic: bool

    def summary(self) -> Dict[str, Any]:
        return {
            "anchor": {"S": self.anchor.s, "E": self.anchor.e, "I": self.anchor.i, "R": self.anchor.r},
            "residual": self.residual,
            "floquet_moduli": self.floquet_moduli,
            "period": self.period,
            "newton_iterations": self.newton_iterations,
            "used_fallback": self.used_fallback,
            "endemic": self.endemic,
        }
