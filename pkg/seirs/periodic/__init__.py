"""
Periodic coefficients: omega-periodic scalar functions (constant + cosine harmonics)
with exact mean and integral and their extrema f^l, f^u over one period.
"""

from .models import Harmonic, PeriodicCoefficient

__version__ = "1.0.0"

__all__ = ["Harmonic", "PeriodicCoefficient"]
