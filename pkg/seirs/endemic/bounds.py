"""
A priori bounds on periodic solutions and the empirical persistence floor K^l.
"""

import logging
import math
from typing import List, Optional, Sequence

import numpy as np

from config.settings import get_settings
from seirs.endemic.models import AprioriBounds, EndemicAlgebraicPoint, PersistenceReport
from seirs.model.incidence import IncidenceSpec
from seirs.model.models import InvariantBox, ModelParams, StateVec
from seirs.ode.integrator import simulate
from seirs.sampling import random_initial_conditions

logger = logging.getLogger(__name__)

SAMPLES_PER_PERIOD = 64


def _log(value: float) -> float:
    return math.log(value) if value > 0.0 else -math.inf


def _radius(a_xi: float, a_chi: float, drift: float) -> float:
    return max(abs(_log(a_xi) + drift), abs(_log(a_chi) - drift))


def apriori_bounds(
    params: ModelParams,
    point: EndemicAlgebraicPoint,
    c1: float,
    c2: float,
    k_lower: float,
) -> AprioriBounds:
    """
    Bounds A_i_xi >= exp(u_i) >= A_i_chi for the log components u = ln(S, E, I, R),
    the radii M1..M4 and M = M0 + ... + M4 with M0 = |ln p| + |ln q| + |ln r| + |ln s| + margin.
    A zero lower bound (gamma^l = 0 or k_lower = 0) gives an infinite radius.
    """
    if c1 <= 0.0 or c2 <= 0.0:
        raise ValueError(f"saturation constants must be positive, got c1={c1:g}, c2={c2:g}")
    omega = params.period
    bars = params.bars()

    beta_l, beta_u = params.beta.extrema()
    eps_l, eps_u = params.eps.extrema()
    lam_l, lam_u = params.lam.extrema()
    mu_l, mu_u = params.mu.extrema()
    gamma_l, gamma_u = params.gamma.extrema()
    eta_l, eta_u = params.eta.extrema()
    me_l, me_u = (params.mu + params.eps).extrema()
    mg_l, mg_u = (params.mu + params.gamma).extrema()
    mh_l, mh_u = (params.mu + params.eta).extrema()

    recruitment = (1.0 + eta_u / mu_l) * lam_u * beta_u * eps_u

    a1_xi = me_u * mg_u / (c1 * beta_l * eps_l)
    a1_chi = me_l * mg_l / (c2 * beta_u * eps_u)
    a3_xi = c2 * recruitment / (c1 * beta_l * me_l * mg_l)
    a3_chi = k_lower
    a4_xi = gamma_u / mh_l * lam_u / mu_l
    a4_chi = gamma_l / mh_u * k_lower
    a2_xi = c2 * mg_l * recruitment / (c1 * eps_l * beta_l * me_l * mg_l)
    a2_chi = mg_l / eps_u * k_lower

    d1 = 2.0 * (bars.beta * c2 * a3_xi * math.exp(-2.0 * (bars.mu + bars.gamma) * omega) + bars.mu) * omega
    m1 = _radius(a1_xi, a1_chi, d1)
    m2 = _radius(a2_xi, a2_chi, 2.0 * (bars.mu + bars.eps) * omega)
    m3 = _radius(a3_xi, a3_chi, 2.0 * (bars.mu + bars.gamma) * omega)
    m4 = _radius(a4_xi, a4_chi, 2.0 * (bars.mu + bars.eta) * omega)
    m0 = sum(abs(_log(v)) for v in (point.p, point.q, point.r, point.s)) + get_settings().M0_MARGIN

    bounds = AprioriBounds(
        a1_xi=a1_xi, a1_chi=a1_chi,
        a2_xi=a2_xi, a2_chi=a2_chi,
        a3_xi=a3_xi, a3_chi=a3_chi,
        a4_xi=a4_xi, a4_chi=a4_chi,
        m0=m0, m1=m1, m2=m2, m3=m3, m4=m4,
        radius=m0 + m1 + m2 + m3 + m4,
        k_lower=k_lower,
        c1=c1,
        c2=c2,
    )
    logger.info(f"[ENDEMIC] A priori radius M = {bounds.radius:.6g}")
    return bounds


def persistence_estimate(
    params: ModelParams,
    inc: IncidenceSpec,
    burn_in: float = 100.0,
    horizon: float = 200.0,
    n_initial: int = 10,
    seed: Optional[int] = None,
    initial_conditions: Optional[Sequence[StateVec]] = None,
    rel_tol: Optional[float] = None,
) -> PersistenceReport:
    """
    K^l = PERSISTENCE_SAFETY * min I(t) over t in [burn_in, horizon] and all runs.

    Degenerate when that minimum is below DEGENERATE_FLOOR, or when the peak of I
    over the last period is below DECAY_RATIO times its peak over the first period
    after burn-in (I still decaying).
    """
    settings = get_settings()
    if not 0.0 <= burn_in < horizon:
        raise ValueError(f"need 0 <= burn_in < horizon, got burn_in={burn_in:g}, horizon={horizon:g}")
    omega = params.period
    if initial_conditions is None:
        initial_conditions = random_initial_conditions(InvariantBox.from_params(params), n_initial, seed)
    initial_conditions = list(initial_conditions)

    count = max(2, int(math.ceil((horizon - burn_in) / omega * SAMPLES_PER_PERIOD)) + 1)
    t_eval = np.linspace(burn_in, horizon, count)
    first = t_eval <= burn_in + omega
    last = t_eval >= horizon - omega

    minima: List[float] = []
    decaying = False
    for x0 in initial_conditions:
        infective = simulate(params, inc, x0, 0.0, horizon, rel_tol=rel_tol, t_eval=t_eval).states[:, 2]
        minima.append(float(infective.min()))
        first_peak, last_peak = float(infective[first].max()), float(infective[last].max())
        if last_peak < settings.DECAY_RATIO * first_peak:
            decaying = True

    min_infective = min(minima)
    reason = ""
    if min_infective < settings.DEGENERATE_FLOOR:
        reason = f"min I = {min_infective:.3e} below floor {settings.DEGENERATE_FLOOR:g}"
    elif decaying:
        reason = "I is still decaying over the window"
    degenerate = bool(reason)

    if degenerate:
        logger.warning(f"[ENDEMIC] Persistence degenerate: {reason}")
    else:
        logger.info(f"[ENDEMIC] Persistence floor min I = {min_infective:.6g}")
    return PersistenceReport(
        k_lower=0.0 if degenerate else settings.PERSISTENCE_SAFETY * min_infective,
        min_infective=min_infective,
        degenerate=degenerate,
        reason=reason,
        n_initial=len(initial_conditions),
        burn_in=burn_in,
        horizon=horizon,
    )
