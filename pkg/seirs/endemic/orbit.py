"""
Periodic orbit by shooting: Newton on G(x) = flow(x, omega) - x.
"""

import logging
from typing import Optional, Tuple, Union

import numpy as np
from numpy.linalg import det, norm, solve

from config.settings import get_settings
from seirs.endemic.models import PeriodicOrbit
from seirs.errors import NewtonStalledError, SingularJacobianError
from seirs.model.incidence import IncidenceSpec
from seirs.model.models import ModelParams, StateVec
from seirs.ode.integrator import flow_map, flow_with_jacobian, simulate
from seirs.ode.linalg import floquet_moduli

logger = logging.getLogger(__name__)

BACKTRACK_STEPS = 8
DEFAULT_GUESS = StateVec(0.1, 0.1, 0.1, 0.1)


def long_run_state(
    params: ModelParams,
    inc: IncidenceSpec,
    x0: Union[StateVec, np.ndarray] = DEFAULT_GUESS,
    periods: Optional[int] = None,
    rel_tol: Optional[float] = None,
) -> StateVec:
    """State after `periods` whole periods from x0 at t = 0"""
    periods = get_settings().PRERUN_PERIODS if periods is None else periods
    horizon = periods * params.period
    return StateVec.from_values(simulate(params, inc, x0, 0.0, horizon, rel_tol, t_eval=[horizon]).final)


def _newton(
    params: ModelParams,
    inc: IncidenceSpec,
    x: np.ndarray,
    max_newton: int,
    tol: float,
    rel_tol: Optional[float],
) -> Tuple[Optional[np.ndarray], Optional[np.ndarray], float, int]:
    """
    (anchor, monodromy, residual, iterations); anchor is None when not converged.

    Converged means both the residual and the next Newton step are below tol.
    A small residual alone bounds the anchor error only by residual / (1 - rho).
    """
    settings = get_settings()
    omega = params.period
    residual = float("inf")
    for iteration in range(max_newton + 1):
        end, monodromy = flow_with_jacobian(params, inc, x, 0.0, omega, rel_tol)
        G = end - x
        residual = float(norm(G, ord=np.inf))
        logger.debug(f"[ORBIT] Newton {iteration}: residual {residual:.3e}")

        shooting = monodromy - np.eye(4)
        if abs(det(shooting)) < settings.SINGULAR_TOL:
            if residual < tol:
                return x, monodromy, residual, iteration
            logger.error(f"[ORBIT] Singular shooting Jacobian at iteration {iteration}")
            raise SingularJacobianError(f"|det(J - I)| = {abs(det(shooting)):.3e} below {settings.SINGULAR_TOL:g}")
        dx = solve(shooting, -G)
        step_norm = float(norm(dx, ord=np.inf))

        if residual < tol and (step_norm < tol or iteration == max_newton):
            return x, monodromy, residual, iteration
        if iteration == max_newton:
            break
        if residual < tol:
            # polish
            x = x + dx
            continue

        # halve the step until the residual decreases; keep the full step otherwise
        step = 1.0
        for _ in range(BACKTRACK_STEPS):
            trial = x + step * dx
            trial_residual = norm(flow_map(params, inc, trial, 0.0, omega, rel_tol, nonnegative=False) - trial, ord=np.inf)
            if trial_residual < residual:
                x = trial
                break
            step *= 0.5
        else:
            x = x + dx
    return None, None, residual, max_newton


def find_periodic_orbit(
    params: ModelParams,
    inc: IncidenceSpec,
    guess: Optional[StateVec] = None,
    max_newton: Optional[int] = None,
    tol: Optional[float] = None,
    rel_tol: Optional[float] = None,
    samples: Optional[int] = None,
    prerun_periods: Optional[int] = None,
) -> PeriodicOrbit:
    """
    Fixed point of the period map. Without a guess, start from the state after
    PRERUN_PERIODS periods from (0.1, 0.1, 0.1, 0.1). If Newton stalls, the guess is
    replaced once by a long run from it and Newton restarts.
    The orbit is endemic when every sample exceeds DEGENERATE_FLOOR and
    I stays above the shooting tolerance.
    """
    settings = get_settings()
    max_newton = settings.NEWTON_MAX_ITER if max_newton is None else max_newton
    tol = settings.ORBIT_RESIDUAL_TOL if tol is None else tol
    samples = settings.ORBIT_SAMPLES if samples is None else samples
    omega = params.period

    start = guess if guess is not None else long_run_state(params, inc, periods=prerun_periods, rel_tol=rel_tol)
    anchor, monodromy, residual, iterations = _newton(params, inc, start.as_array(), max_newton, tol, rel_tol)
    used_fallback = False
    if anchor is None:
        logger.warning(f"[ORBIT] Newton stalled at residual {residual:.3e}; re-seeding from a long run")
        used_fallback = True
        reseed = long_run_state(params, inc, start, periods=prerun_periods, rel_tol=rel_tol)
        anchor, monodromy, residual, iterations = _newton(params, inc, reseed.as_array(), max_newton, tol, rel_tol)
        if anchor is None:
            logger.error(f"[ORBIT] Newton stalled after fallback, residual {residual:.3e}")
            raise NewtonStalledError(f"shooting did not converge: residual {residual:.3e} after {max_newton} steps")

    anchor_state = StateVec.from_values(anchor, slack=tol)
    orbit = simulate(params, inc, anchor_state, 0.0, omega, rel_tol, t_eval=np.linspace(0.0, omega, samples))
    # disease-free when I stays within the shooting tolerance of zero
    endemic = bool(orbit.states.min() > settings.DEGENERATE_FLOOR and orbit.states[:, 2].min() > tol)
    moduli = floquet_moduli(monodromy)

    logger.info(
        f"[ORBIT] Converged in {iterations} steps, residual {residual:.3e}, "
        f"{'endemic' if endemic else 'disease-free'} anchor {anchor_state.as_tuple()}"
    )
    return PeriodicOrbit(
        anchor=anchor_state,
        residual=residual,
        floquet_moduli=moduli,
        orbit=orbit,
        period=omega,
        newton_iterations=iterations,
        used_fallback=used_fallback,
        endemic=endemic,
    )
