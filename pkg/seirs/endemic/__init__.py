"""
Endemic analysis: averaged algebraic point, matrix M, a priori bounds,
persistence floor, periodic-orbit shooting and the existence verdict
"""

from .models import (
    EndemicAlgebraicPoint,
    ThresholdMatrix,
    ClosedFormDeterminant,
    AprioriBounds,
    PersistenceReport,
    PeriodicOrbit,
    ThresholdReport,
    Verdict,
)
from .algebraic import (
    combination_constant,
    psi,
    psi_at_zero,
    averaged_r0,
    solve_r,
    threshold_matrix,
    det_m_general,
    det_m_closed_form,
)
from .bounds import apriori_bounds, persistence_estimate
from .orbit import find_periodic_orbit, long_run_state
from .service import existence_report

__version__ = "1.0.0"

__all__ = [
    "EndemicAlgebraicPoint",
    "ThresholdMatrix",
    "ClosedFormDeterminant",
    "AprioriBounds",
    "PersistenceReport",
    "PeriodicOrbit",
    "ThresholdReport",
    "Verdict",
    "combination_constant",
    "psi",
    "psi_at_zero",
    "averaged_r0",
    "solve_r",
    "threshold_matrix",
    "det_m_general",
    "det_m_closed_form",
    "apriori_bounds",
    "persistence_estimate",
    "find_periodic_orbit",
    "long_run_state",
    "existence_report",
]
