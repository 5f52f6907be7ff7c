"""
Period-averaged endemic point and the matrix M built on it.

With bars taken over one period and L = Lambda/mu,

    d   = (mu + gamma)/eps + 1 + gamma/(mu + eta)
    psi(v) = eps beta / (mu + gamma) * phi(L - d v, L, v) / v - (mu + eps)

psi is non-increasing on (0, L/d) with psi(L/d) = -(mu + eps); a positive root
exists iff psi(0+) > 0.
"""

import logging
from typing import Optional

import numpy as np
from scipy.optimize import bisect

from config.settings import get_settings
from seirs.errors import NoEndemicRootError
from seirs.model.incidence import IncidenceFamily, IncidenceSpec, RationalContact
from seirs.model.models import BarParameters, ModelParams
from seirs.endemic.models import ClosedFormDeterminant, EndemicAlgebraicPoint, ThresholdMatrix

logger = logging.getLogger(__name__)

BRACKET_HALVINGS = 60

UNIT_CONTACT = RationalContact(a=1.0, b=0.0, c=1.0, d=0.0)


def combination_constant(bars: BarParameters) -> float:
    return (bars.mu + bars.gamma) / bars.eps + 1.0 + bars.gamma / (bars.mu + bars.eta)


def psi(v: float, bars: BarParameters, inc: IncidenceSpec) -> float:
    population = bars.population
    d = combination_constant(bars)
    susceptible = max(population - d * v, 0.0)
    force = float(inc.phi(susceptible, population, v))
    return bars.eps * bars.beta / (bars.mu + bars.gamma) * force / v - (bars.mu + bars.eps)


def psi_at_zero(bars: BarParameters, inc: IncidenceSpec) -> float:
    """psi(0+) = eps beta dphi/dI(L, L, 0) / (mu + gamma) - (mu + eps)"""
    population = bars.population
    slope = float(inc.d_i(population, population, 0.0))
    return bars.eps * bars.beta * slope / (bars.mu + bars.gamma) - (bars.mu + bars.eps)


def averaged_r0(bars: BarParameters, inc: IncidenceSpec) -> float:
    population = bars.population
    slope = float(inc.d_i(population, population, 0.0))
    return bars.eps * bars.beta * slope / ((bars.mu + bars.eps) * (bars.mu + bars.gamma))


def solve_r(params: ModelParams, inc: IncidenceSpec, tol: Optional[float] = None) -> EndemicAlgebraicPoint:
    """
    Unique root r of psi in (0, d0) by bisection, then
    p = L - d r, q = (mu + gamma) r / eps, s = gamma r / (mu + eta).
    """
    tol = get_settings().ROOT_TOL if tol is None else tol
    bars = params.bars()
    population = bars.population
    d = combination_constant(bars)
    d0 = population / d

    at_zero = psi_at_zero(bars, inc)
    if at_zero <= 0.0:
        raise NoEndemicRootError(
            f"psi(0+) = {at_zero:.6g} <= 0: averaged reproduction number "
            f"{averaged_r0(bars, inc):.6g} does not exceed 1"
        )

    lo = d0
    for _ in range(BRACKET_HALVINGS):
        lo *= 0.5
        if psi(lo, bars, inc) > 0.0:
            break
    else:
        raise NoEndemicRootError("psi stays non-positive near 0; no endemic root found")

    r = bisect(lambda v: psi(v, bars, inc), lo, d0, xtol=tol)
    point = EndemicAlgebraicPoint(
        r=float(r),
        p=population - d * r,
        q=(bars.mu + bars.gamma) * r / bars.eps,
        s=bars.gamma * r / (bars.mu + bars.eta),
        d=d,
        d0=d0,
        averaged_r0=averaged_r0(bars, inc),
        bars=bars,
    )
    logger.info(f"[ENDEMIC] Algebraic point p={point.p:.10g}, q={point.q:.10g}, r={point.r:.10g}, s={point.s:.10g}")
    return point


def _k_terms(point: EndemicAlgebraicPoint, inc: IncidenceSpec):
    bars = point.bars
    d_s, d_n, d_i = (float(g) for g in inc.gradient(point.p, bars.population, point.r))
    return d_s, d_n, d_i


def threshold_matrix(point: EndemicAlgebraicPoint, inc: IncidenceSpec) -> ThresholdMatrix:
    """
    M = [[-mu - K110, -K010 q/p, -K011 r/p, (eta - K010) s/p],
         [K110 p/q,    K010,      K011 r/q,  K010 s/q],
         [0,           mu+gamma,  -(mu+gamma), 0],
         [0,           0,         mu+eta,    -(mu+eta)]]

    with K_abc = beta (a dphi/dS + b dphi/dN + c dphi/dI) at (p, L, r).
    """
    bars = point.bars
    p, q, r, s = point.p, point.q, point.r, point.s
    d_s, d_n, d_i = _k_terms(point, inc)
    k110 = bars.beta * (d_s + d_n)
    k010 = bars.beta * d_n
    k011 = bars.beta * (d_n + d_i)
    mu, gamma, eta = bars.mu, bars.gamma, bars.eta

    matrix = np.array([
        [-mu - k110, -k010 * q / p, -k011 * r / p, (eta - k010) * s / p],
        [k110 * p / q, k010, k011 * r / q, k010 * s / q],
        [0.0, mu + gamma, -(mu + gamma), 0.0],
        [0.0, 0.0, mu + eta, -(mu + eta)],
    ])
    det = float(np.linalg.det(matrix))
    logger.debug(f"[ENDEMIC] det M = {det:.10g}")
    return ThresholdMatrix(matrix=matrix.tolist(), det=det, k110=k110, k010=k010, k011=k011)


def det_m_general(point: EndemicAlgebraicPoint, inc: IncidenceSpec) -> float:
    """
    Closed form of det M for any incidence:
        -((mu + gamma)(mu + eta)/q) beta [dphi/dN (mu (q + r + s) + eta s) + mu r dphi/dI + eta s dphi/dS]
    """
    bars = point.bars
    q, r, s = point.q, point.r, point.s
    d_s, d_n, d_i = _k_terms(point, inc)
    mu, gamma, eta = bars.mu, bars.gamma, bars.eta
    bracket = d_n * (mu * (q + r + s) + eta * s) + mu * r * d_i + eta * s * d_s
    return -(mu + gamma) * (mu + eta) / q * bars.beta * bracket


def det_m_closed_form(point: EndemicAlgebraicPoint, inc: IncidenceSpec) -> Optional[ClosedFormDeterminant]:
    """
    N-independent phi: -((eta + mu)(gamma + mu)/q)(eta s dphi/dS + mu r dphi/dI),
    displayed without the beta_bar factor.
    Michaelis-Menten C(N)/N S I (standard incidence is C = 1): the expansion in
    C(L) and C'(L), including beta_bar. Any other family: None.
    """
    bars = point.bars
    p, q, r, s = point.p, point.q, point.r, point.s
    mu, gamma, eta = bars.mu, bars.gamma, bars.eta
    scale = -(eta + mu) * (gamma + mu) / q

    if inc.n_independent:
        d_s, _, d_i = _k_terms(point, inc)
        value = scale * (eta * s * d_s + mu * r * d_i)
        return ClosedFormDeterminant(value=value, rule="n_independent", includes_beta=False)

    if inc.family in (IncidenceFamily.MICHAELIS_MENTEN, IncidenceFamily.STANDARD):
        contact = inc.contact or UNIT_CONTACT
        population = bars.population
        weight = mu * r + eta * s + mu * q + mu * s
        c_value = float(contact.value(population))
        c_slope = float(contact.derivative(population))
        bracket = (
            c_slope / population * p * r * weight
            - c_value / population ** 2 * p * r * weight
            + c_value / population * r * (s * eta + p * mu)
        )
        return ClosedFormDeterminant(value=bars.beta * scale * bracket, rule="michaelis_menten", includes_beta=True)

    return None
