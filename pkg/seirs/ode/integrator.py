"""
Adaptive Runge-Kutta integration of the model, its variational system and
periodic linear systems (fundamental / monodromy matrices).

Everything runs on scipy's embedded 4(5) pair (`solve_ivp(method="RK45")`).
"""

import logging
from typing import Callable, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.integrate import solve_ivp

from config.settings import get_settings
from seirs.errors import (
    IntegrationError,
    ModelValidationError,
    NegativeStateError,
    NonFiniteStateError,
    StepSizeUnderflowError,
)
from seirs.model.field import make_rhs, make_variational_rhs
from seirs.model.incidence import IncidenceSpec
from seirs.model.models import ModelParams, StateVec
from seirs.ode.models import Trajectory

logger = logging.getLogger(__name__)

Rhs = Callable[[float, np.ndarray], np.ndarray]
MatrixMap = Callable[[float], np.ndarray]

MAX_TOLERANCE = 1e-2


def _tolerances(rel_tol: Optional[float], abs_tol: Optional[float]) -> Tuple[float, float]:
    settings = get_settings()
    rel_tol = settings.REL_TOL if rel_tol is None else rel_tol
    abs_tol = settings.ABS_TOL if abs_tol is None else abs_tol
    for name, value in (("rel_tol", rel_tol), ("abs_tol", abs_tol)):
        if not 0.0 < value <= MAX_TOLERANCE:
            raise ModelValidationError(f"{name} must lie in (0, {MAX_TOLERANCE:g}], got {value:g}")
    return rel_tol, abs_tol


def integrate(
    field: Rhs,
    t0: float,
    x0: Union[StateVec, Sequence[float], np.ndarray],
    t1: float,
    rel_tol: Optional[float] = None,
    abs_tol: Optional[float] = None,
    t_eval: Optional[np.ndarray] = None,
    dense: bool = False,
    nonnegative: bool = True,
) -> Trajectory:
    """
    Solve x' = field(t, x) on [t0, t1].

    Samples are the accepted steps unless `t_eval` is given. With `nonnegative`,
    undershoot smaller than max(NEGATIVE_SLACK, abs_tol) is clamped to 0 and larger
    undershoot raises NegativeStateError. A zero horizon returns the single row x0.
    """
    rel_tol, abs_tol = _tolerances(rel_tol, abs_tol)
    y0 = x0.as_array() if isinstance(x0, StateVec) else np.atleast_1d(np.asarray(x0, dtype=float))
    if not np.all(np.isfinite(y0)):
        raise NonFiniteStateError(f"non-finite initial state {y0.tolist()}")
    if t1 < t0:
        raise ModelValidationError(f"integration end {t1:g} precedes start {t0:g}")
    if t1 == t0:
        return Trajectory(times=np.array([float(t0)]), states=y0[np.newaxis, :].copy())

    try:
        sol = solve_ivp(
            field,
            (t0, t1),
            y0,
            method="RK45",
            rtol=rel_tol,
            atol=abs_tol,
            t_eval=t_eval,
            dense_output=dense,
        )
    except IntegrationError:
        logger.error(f"[ODE] Right-hand side failed on [{t0:g}, {t1:g}]")
        raise

    if sol.status == -1:
        message = str(sol.message)
        logger.error(f"[ODE] Integration failed at t={sol.t[-1] if sol.t.size else t0:g}: {message}")
        if "step size" in message.lower():
            raise StepSizeUnderflowError(f"step size underflow (stiff problem?): {message}")
        raise IntegrationError(message)

    states = sol.y.T.copy()
    if not np.all(np.isfinite(states)):
        raise NonFiniteStateError("integration produced non-finite states")
    if nonnegative:
        states = clamp_negative(states, max(get_settings().NEGATIVE_SLACK, abs_tol))

    logger.debug(f"[ODE] [{t0:g}, {t1:g}] in {sol.nfev} evaluations, {len(sol.t)} samples")
    return Trajectory(times=sol.t.copy(), states=states, dense=sol.sol if dense else None)


def clamp_negative(states: np.ndarray, slack: float) -> np.ndarray:
    """Zero out round-off undershoot; anything below -slack is an error"""
    lowest = float(np.min(states))
    if lowest < -slack:
        raise NegativeStateError(f"state component {lowest:.3e} below -{slack:g}")
    return np.where(states < 0.0, 0.0, states)


def simulate(
    params: ModelParams,
    inc: IncidenceSpec,
    x0: Union[StateVec, np.ndarray],
    t0: float,
    t1: float,
    rel_tol: Optional[float] = None,
    abs_tol: Optional[float] = None,
    t_eval: Optional[np.ndarray] = None,
    dense: bool = False,
) -> Trajectory:
    """Trajectory of the SEIRS system"""
    return integrate(make_rhs(params, inc), t0, x0, t1, rel_tol, abs_tol, t_eval=t_eval, dense=dense)


# ==================== Linear periodic systems ====================

def fundamental_matrix(
    A: MatrixMap,
    t0: float,
    t1: float,
    rel_tol: Optional[float] = None,
    abs_tol: Optional[float] = None,
) -> np.ndarray:
    """Phi(t1) for Phi' = A(t) Phi, Phi(t0) = I; all columns integrated together"""
    n = np.asarray(A(t0)).shape[0]
    if t1 == t0:
        return np.eye(n)

    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        return (np.asarray(A(t), dtype=float) @ y.reshape(n, n)).ravel()

    trajectory = integrate(rhs, t0, np.eye(n).ravel(), t1, rel_tol, abs_tol, t_eval=[t1], nonnegative=False)
    return trajectory.final.reshape(n, n)


# ==================== Flow and variational system ====================

def flow_map(
    params: ModelParams,
    inc: IncidenceSpec,
    x0: Union[StateVec, np.ndarray],
    t0: float,
    T: float,
    rel_tol: Optional[float] = None,
    abs_tol: Optional[float] = None,
    nonnegative: bool = True,
) -> np.ndarray:
    """State at t0 + T"""
    if T == 0.0:
        return np.asarray(x0.as_array() if isinstance(x0, StateVec) else x0, dtype=float).copy()
    trajectory = integrate(
        make_rhs(params, inc), t0, x0, t0 + T, rel_tol, abs_tol, t_eval=[t0 + T], nonnegative=nonnegative,
    )
    return trajectory.final


def flow_with_jacobian(
    params: ModelParams,
    inc: IncidenceSpec,
    x0: Union[StateVec, np.ndarray],
    t0: float,
    T: float,
    rel_tol: Optional[float] = None,
    abs_tol: Optional[float] = None,
) -> Tuple[np.ndarray, np.ndarray]:
    """(flow(x0, T), D_x0 flow) from the 4 + 16 augmented system"""
    y0 = x0.as_array() if isinstance(x0, StateVec) else np.asarray(x0, dtype=float)
    if T == 0.0:
        return y0.copy(), np.eye(4)
    augmented = np.concatenate([y0, np.eye(4).ravel()])
    trajectory = integrate(
        make_variational_rhs(params, inc), t0, augmented, t0 + T,
        rel_tol, abs_tol, t_eval=[t0 + T], nonnegative=False,
    )
    end = trajectory.final
    return end[:4].copy(), end[4:].reshape(4, 4)


def flow_jacobian(
    params: ModelParams,
    inc: IncidenceSpec,
    x0: Union[StateVec, np.ndarray],
    t0: float,
    T: float,
    rel_tol: Optional[float] = None,
    abs_tol: Optional[float] = None,
) -> np.ndarray:
    """4x4 derivative of the time-T flow with respect to the initial state"""
    return flow_with_jacobian(params, inc, x0, t0, T, rel_tol, abs_tol)[1]
