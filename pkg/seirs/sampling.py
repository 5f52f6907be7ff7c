"""
Seeded random initial conditions inside the invariant box.
"""

from typing import List, Optional

import numpy as np

from config.settings import get_settings
from seirs.model.models import InvariantBox, StateVec


def random_initial_conditions(box: InvariantBox, count: int, seed: Optional[int] = None) -> List[StateVec]:
    """
    `count` states with N uniform on [n_lower, n_upper] split by a flat Dirichlet
    draw, so every component is positive. Same seed, same states.
    """
    rng = np.random.default_rng(get_settings().DEFAULT_SEED if seed is None else seed)
    totals = rng.uniform(box.n_lower, box.n_upper, size=count)
    shares = rng.dirichlet(np.ones(4), size=count)
    return [StateVec(*(float(v) for v in total * share)) for total, share in zip(totals, shares)]
