"""
ODE engine data types
"""

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
import pandas as pd

from seirs.model.models import StateVec

COLUMNS = ["S", "E", "I", "R"]


@dataclass(frozen=True)
class Trajectory:
    """
    Time-sampled solution. `states` has one row per sample; `dense` is the
    solver's continuous extension when requested.
    """

    times: np.ndarray
    states: np.ndarray
    dense: Optional[Callable[[float], np.ndarray]] = None

    def __post_init__(self) -> None:
        if self.times.ndim != 1 or self.states.shape[0] != self.times.shape[0]:
            raise ValueError(f"times {self.times.shape} and states {self.states.shape} do not line up")
        if np.any(np.diff(self.times) <= 0.0):
            raise ValueError("trajectory times must be strictly increasing")

    def __len__(self) -> int:
        return int(self.times.shape[0])

    @property
    def has_dense_output(self) -> bool:
        return self.dense is not None

    @property
    def population(self) -> np.ndarray:
        return self.states.sum(axis=1)

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]

    def state(self, index: int) -> StateVec:
        return StateVec.from_values(self.states[index])

    def at(self, t: float) -> np.ndarray:
        """State at time t from the continuous extension"""
        if self.dense is None:
            raise ValueError("trajectory was integrated without dense output")
        return np.asarray(self.dense(t), dtype=float)

    def to_frame(self) -> pd.DataFrame:
        """Columns t, S, E, I, R, N"""
        frame = pd.DataFrame(self.states, columns=COLUMNS)
        frame.insert(0, "t", self.times)
        frame["N"] = self.population
        return frame
