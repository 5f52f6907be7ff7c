"""
ODE engine: adaptive integration, flow maps, variational and monodromy matrices
"""

from .models import Trajectory
from .integrator import (
    integrate,
    simulate,
    clamp_negative,
    fundamental_matrix,
    flow_map,
    flow_with_jacobian,
    flow_jacobian,
)
from .linalg import eigenvalues, spectral_radius, floquet_moduli

__version__ = "1.0.0"

__all__ = [
    "Trajectory",
    "integrate",
    "simulate",
    "clamp_negative",
    "fundamental_matrix",
    "flow_map",
    "flow_with_jacobian",
    "flow_jacobian",
    "eigenvalues",
    "spectral_radius",
    "floquet_moduli",
]
