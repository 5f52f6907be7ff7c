"""
Basic reproduction ratio of the periodic linearization at the disease-free solution.

Infected compartments (E, I) linearized at (S*, 0, 0, 0):

    F(t) = [[0, beta(t) dphi/dI(S*, S*, 0)], [0, 0]]
    V(t) = [[mu + eps, 0], [-eps, mu + gamma]]

R0 is the unique lambda > 0 with rho(Phi_{F/lambda - V}(omega)) = 1; it lies on the
same side of 1 as rho(Phi_{F - V}(omega)).
"""

import logging
import math
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.optimize import bisect

from config.settings import get_settings
from seirs.errors import DegenerateModelError
from seirs.model.incidence import IncidenceSpec
from seirs.model.models import InvariantBox, ModelParams
from seirs.ode.integrator import fundamental_matrix, simulate
from seirs.ode.linalg import spectral_radius
from seirs.sampling import random_initial_conditions
from seirs.threshold.dfe import dfe_solution
from seirs.threshold.models import AttractivityReport, Classification, DfeSolution, R0Report

logger = logging.getLogger(__name__)

MatrixMap = Callable[[float], np.ndarray]

ZERO_FORCE_SAMPLES = 64


def fv_matrices(
    params: ModelParams,
    inc: IncidenceSpec,
    dfe: Optional[DfeSolution] = None,
) -> Tuple[MatrixMap, MatrixMap]:
    """(F(t), V(t)) as 2x2 matrix-valued callables"""
    dfe = dfe or dfe_solution(params.lam, params.mu, params.period)

    def F(t: float) -> np.ndarray:
        s = dfe(t)
        return np.array([[0.0, params.beta.evaluate(t) * float(inc.d_i(s, s, 0.0))], [0.0, 0.0]])

    def V(t: float) -> np.ndarray:
        mu = params.mu.evaluate(t)
        eps = params.eps.evaluate(t)
        return np.array([[mu + eps, 0.0], [-eps, mu + params.gamma.evaluate(t)]])

    return F, V


def scaled_monodromy_radius(
    params: ModelParams,
    inc: IncidenceSpec,
    lam: float,
    dfe: Optional[DfeSolution] = None,
    rel_tol: Optional[float] = None,
    abs_tol: Optional[float] = None,
) -> float:
    """rho(Phi_{F/lam - V}(omega))"""
    F, V = fv_matrices(params, inc, dfe)
    monodromy = fundamental_matrix(lambda t: F(t) / lam - V(t), 0.0, params.period, rel_tol, abs_tol)
    return spectral_radius(monodromy)


def threshold_rho(
    params: ModelParams,
    inc: IncidenceSpec,
    dfe: Optional[DfeSolution] = None,
    rel_tol: Optional[float] = None,
    abs_tol: Optional[float] = None,
) -> float:
    """rho(Phi_{F - V}(omega))"""
    return scaled_monodromy_radius(params, inc, 1.0, dfe, rel_tol, abs_tol)


def _force_vanishes(F: MatrixMap, period: float) -> bool:
    nodes = np.linspace(0.0, period, ZERO_FORCE_SAMPLES, endpoint=False)
    return all(F(t)[0, 1] == 0.0 for t in nodes)


def r0_wang_zhao(
    params: ModelParams,
    inc: IncidenceSpec,
    tol: Optional[float] = None,
    rel_tol: Optional[float] = None,
    band: Optional[float] = None,
) -> R0Report:
    """
    R0 by bisection on lambda. The bracket grows geometrically from 1 (doubling
    or halving) until rho(Phi_{F/lambda - V}(omega)) - 1 changes sign; growth past
    R0_MAX_BRACKET raises DegenerateModelError. F == 0 gives R0 = 0.
    """
    settings = get_settings()
    tol = settings.R0_BISECTION_TOL if tol is None else tol
    rel_tol = settings.BISECTION_REL_TOL if rel_tol is None else rel_tol
    band = settings.CRITICAL_BAND if band is None else band
    limit = settings.R0_MAX_BRACKET

    dfe = dfe_solution(params.lam, params.mu, params.period)
    F, _ = fv_matrices(params, inc, dfe)
    rho_fv = threshold_rho(params, inc, dfe, rel_tol=rel_tol)

    if _force_vanishes(F, params.period):
        logger.info(f"[R0] F vanishes identically; R0 = 0, rho_FV = {rho_fv:.8f}")
        return R0Report(
            rho_fv=rho_fv,
            r0=0.0,
            classification=Classification.EXTINCTION,
            bisection_residual=rho_fv - 1.0,
        )

    def excess(lam: float) -> float:
        return scaled_monodromy_radius(params, inc, lam, dfe, rel_tol=rel_tol) - 1.0

    at_one = rho_fv - 1.0
    if at_one == 0.0:
        lo = hi = 1.0
    elif at_one > 0.0:
        lo, hi = 1.0, 2.0
        while excess(hi) > 0.0:
            lo, hi = hi, 2.0 * hi
            if hi > limit:
                logger.error(f"[R0] Bracket grew past {limit:g}")
                raise DegenerateModelError(f"R0 bracket exceeded {limit:g}; degenerate model")
    else:
        lo, hi = 0.5, 1.0
        while excess(lo) < 0.0:
            lo, hi = 0.5 * lo, lo
            if lo < 1.0 / limit:
                logger.error(f"[R0] Bracket shrank below {1.0 / limit:g}")
                raise DegenerateModelError(f"R0 bracket fell below {1.0 / limit:g}; degenerate model")
    logger.info(f"[R0] Bracket [{lo:g}, {hi:g}] (rho_FV = {rho_fv:.8f})")

    if lo == hi:
        r0, iterations = 1.0, 0
    else:
        r0, result = bisect(excess, lo, hi, xtol=tol, full_output=True)
        iterations = result.iterations
    residual = excess(r0)

    classification = Classification.of(r0, band)
    rho_side = Classification.of(rho_fv, band)
    if Classification.CRITICAL not in (classification, rho_side) and classification != rho_side:
        logger.warning(f"[R0] R0 = {r0:.8f} and rho_FV = {rho_fv:.8f} fall on different sides of 1")

    logger.info(f"[R0] R0 = {r0:.8f} ({classification.value}) after {iterations} bisection steps")
    return R0Report(
        rho_fv=rho_fv,
        r0=float(r0),
        classification=classification,
        bisection_residual=float(residual),
        bracket=(lo, hi),
        iterations=iterations,
    )


def r0_bacaer_approx(
    beta_bar: float,
    eps: float,
    mu: float,
    gamma: float,
    b: float,
    period: float = 1.0,
) -> float:
    """
    Small-amplitude expansion for beta(t) = beta_bar (1 + b cos(2 pi t / period))
    with constant Lambda = mu (S* = 1) and the other rates constant:

        beta eps / ((mu + eps)(mu + gamma)) + (beta eps b^2 / 2) / ((2 pi / period)^2 + (2 mu + eps + gamma)^2)
    """
    nu = 2.0 * math.pi / period
    base = beta_bar * eps / ((mu + eps) * (mu + gamma))
    correction = beta_bar * eps * b * b / 2.0 / (nu * nu + (2.0 * mu + eps + gamma) ** 2)
    return base + correction


def comparison_quantity(params: ModelParams) -> float:
    """beta^l eps^l Lambda^l / ((mu + eps)^u (mu + gamma)^u mu^u)"""
    beta_lower, _ = params.beta.extrema()
    eps_lower, _ = params.eps.extrema()
    lam_lower, _ = params.lam.extrema()
    _, mu_eps_upper = (params.mu + params.eps).extrema()
    _, mu_gamma_upper = (params.mu + params.gamma).extrema()
    _, mu_upper = params.mu.extrema()
    return beta_lower * eps_lower * lam_lower / (mu_eps_upper * mu_gamma_upper * mu_upper)


def dfe_attractivity_check(
    params: ModelParams,
    inc: IncidenceSpec,
    n_initial: int = 10,
    horizon: float = 200.0,
    tol: float = 1e-4,
    seed: Optional[int] = None,
    rel_tol: Optional[float] = None,
) -> AttractivityReport:
    """
    Integrate from `n_initial` seeded random states in the invariant box and measure
    the Euclidean distance to (S*(horizon), 0, 0, 0) at the horizon.
    """
    dfe = dfe_solution(params.lam, params.mu, params.period)
    box = InvariantBox.from_params(params)
    target = np.array([dfe(horizon), 0.0, 0.0, 0.0])

    deviations, final_infective = [], []
    for x0 in random_initial_conditions(box, n_initial, seed):
        end = simulate(params, inc, x0, 0.0, horizon, rel_tol=rel_tol, t_eval=[horizon]).final
        deviations.append(float(np.linalg.norm(end - target)))
        final_infective.append(float(end[2]))

    max_deviation = max(deviations) if deviations else 0.0
    converged = max_deviation < tol
    log = logger.info if converged else logger.warning
    log(f"[DFE] Attractivity over {n_initial} runs to t={horizon:g}: max deviation {max_deviation:.3e}")
    return AttractivityReport(
        n_initial=n_initial,
        horizon=horizon,
        tol=tol,
        deviations=deviations,
        max_deviation=max_deviation,
        max_final_infective=max(final_infective) if final_infective else 0.0,
        converged=converged,
    )
