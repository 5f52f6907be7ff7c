"""
The forced mass-action family

    Lambda = mu = 2, eps = 1, gamma = 0.02, eta = 0, omega = 1,
    beta(t) = beta0 * (1 + b * cos(2*pi*t + phase))

with its disease-free state (1, 0, 0, 0) and the three published initial conditions.
"""

from typing import List, Tuple

from seirs.model.models import ModelParams, StateVec
from seirs.periodic import PeriodicCoefficient

PERIOD = 1.0
RECRUITMENT = 2.0
DEATH = 2.0
INCUBATION = 1.0
RECOVERY = 0.02
IMMUNITY_LOSS = 0.0

INITIAL_CONDITIONS: List[StateVec] = [
    StateVec(0.1, 0.1, 0.1, 0.1),
    StateVec(0.08, 0.07, 0.12, 0.13),
    StateVec(1.99, 0.09, 0.05, 0.25),
]

# (beta0, b) cells of the worked example
FORCED_CELLS: List[Tuple[float, float]] = [(5.9, 0.1), (5.9, 0.6), (6.9, 0.1), (6.9, 0.6)]


def forced_mass_action_params(beta: float, amplitude: float, phase: float = 0.0) -> ModelParams:
    return ModelParams(
        lam=PeriodicCoefficient.constant_value(RECRUITMENT, PERIOD),
        mu=PeriodicCoefficient.constant_value(DEATH, PERIOD),
        beta=PeriodicCoefficient.cosine(beta, amplitude, PERIOD, phase=phase),
        eta=PeriodicCoefficient.constant_value(IMMUNITY_LOSS, PERIOD),
        eps=PeriodicCoefficient.constant_value(INCUBATION, PERIOD),
        gamma=PeriodicCoefficient.constant_value(RECOVERY, PERIOD),
        period=PERIOD,
    )
