"""
periodic-seirs - numerical analysis of periodic SEIRS models with general incidence

Pure Python library (numpy/scipy); no dependency on the HTTP layer.
"""

from typing import Any, Dict

__version__ = "1.0.0"
__author__ = "periodic-seirs developers"


def get_library_info() -> Dict[str, Any]:
    """Library information"""
    return {
        "module": "periodic-seirs",
        "version": __version__,
        "author": __author__,
        "description": "Periodic SEIRS thresholds, reproduction ratio and endemic orbits",
        "framework_independent": True,
    }
