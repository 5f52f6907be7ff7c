"""
Disease-free periodic solution, periodic reproduction ratio and threshold checks
"""

from .models import Classification, DfeSolution, R0Report, AttractivityReport
from .dfe import dfe_solution
from .r0 import (
    fv_matrices,
    scaled_monodromy_radius,
    threshold_rho,
    r0_wang_zhao,
    r0_bacaer_approx,
    comparison_quantity,
    dfe_attractivity_check,
)

__version__ = "1.0.0"

__all__ = [
    "Classification",
    "DfeSolution",
    "R0Report",
    "AttractivityReport",
    "dfe_solution",
    "fv_matrices",
    "scaled_monodromy_radius",
    "threshold_rho",
    "r0_wang_zhao",
    "r0_bacaer_approx",
    "comparison_quantity",
    "dfe_attractivity_check",
]
