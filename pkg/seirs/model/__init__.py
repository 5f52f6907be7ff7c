"""
SEIRS model core: parameters, incidence functions, vector field and hypothesis audit
"""

from .models import (
    ModelParams,
    BarParameters,
    StateVec,
    InvariantBox,
    HypothesisCheck,
    HypothesisReport,
)
from .incidence import (
    IncidenceFamily,
    IncidenceSpec,
    RationalContact,
    SaturationConstants,
    mass_action,
    standard,
    michaelis_menten,
    holling_ii,
    power_law,
    saturated_power,
    custom,
    build_incidence,
)
from .field import vector_field, jacobian, make_rhs, make_variational_rhs
from .hypotheses import check_hypotheses
from .presets import forced_mass_action_params, INITIAL_CONDITIONS, FORCED_CELLS

__version__ = "1.0.0"

__all__ = [
    "ModelParams",
    "BarParameters",
    "StateVec",
    "InvariantBox",
    "HypothesisCheck",
    "HypothesisReport",
    "IncidenceFamily",
    "IncidenceSpec",
    "RationalContact",
    "SaturationConstants",
    "mass_action",
    "standard",
    "michaelis_menten",
    "holling_ii",
    "power_law",
    "saturated_power",
    "custom",
    "build_incidence",
    "vector_field",
    "jacobian",
    "make_rhs",
    "make_variational_rhs",
    "check_hypotheses",
    "forced_mass_action_params",
    "INITIAL_CONDITIONS",
    "FORCED_CELLS",
]
