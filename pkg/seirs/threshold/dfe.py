"""
Disease-free periodic solution S*(t) of S' = Lambda(t) - mu(t) S.
"""

import logging
import math
from typing import Optional

import numpy as np
from scipy.integrate import quad

from seirs.errors import DegenerateModelError
from seirs.ode.integrator import integrate
from seirs.periodic import PeriodicCoefficient
from seirs.threshold.models import DfeSolution

logger = logging.getLogger(__name__)

QUAD_TOL = 1e-12
PROFILE_REL_TOL = 1e-12
PROFILE_ABS_TOL = 1e-14


def dfe_solution(lam: PeriodicCoefficient, mu: PeriodicCoefficient, period: Optional[float] = None) -> DfeSolution:
    """
    Unique positive periodic solution of S' = Lambda - mu S.

    Constant mu has the exact harmonic form
        c/mu + sum a/(mu^2 + nu^2) [mu cos(nu t + phase) + nu sin(nu t + phase)].
    Otherwise
        y0 = int_0^w Lambda(u) exp(-int_u^w mu) du / (1 - exp(-int_0^w mu))
    by adaptive quadrature, and S* follows S' = Lambda - mu S from y0.
    """
    period = lam.period if period is None else period
    mean_decay = mu.integral(0.0, period)
    if mean_decay <= 0.0:
        logger.error(f"[DFE] int_0^omega mu = {mean_decay:g}; no periodic solution")
        raise DegenerateModelError("mu integrates to zero over a period; the disease-free solution is undefined")

    if mu.is_constant:
        return _constant_mu_solution(lam, mu.constant, period)

    def integrand(u: float) -> float:
        return lam.evaluate(u) * math.exp(-mu.integral(u, period))

    numerator, error = quad(integrand, 0.0, period, epsabs=QUAD_TOL, epsrel=QUAD_TOL, limit=200)
    y0 = numerator / (1.0 - math.exp(-mean_decay))
    logger.debug(f"[DFE] y0 = {y0:.12g} (quadrature error {error:.2e})")

    profile = integrate(
        lambda t, y: lam.evaluate(t) - mu.evaluate(t) * y,
        0.0,
        [y0],
        period,
        rel_tol=PROFILE_REL_TOL,
        abs_tol=PROFILE_ABS_TOL,
        dense=True,
    )

    def s_star(t):
        value = profile.at(np.mod(t, period))[0]
        return float(value) if np.ndim(value) == 0 else value

    return DfeSolution(s_star=s_star, y0=float(y0), period=period)


def _constant_mu_solution(lam: PeriodicCoefficient, mu: float, period: float) -> DfeSolution:
    terms = []
    for h in lam.harmonics:
        nu = 2.0 * math.pi * h.k / period
        terms.append((h.amplitude / (mu * mu + nu * nu), nu, h.phase))

    def s_star(t):
        t_arr = np.asarray(t, dtype=float)
        value = np.full(t_arr.shape, lam.constant / mu)
        for scale, nu, phase in terms:
            angle = nu * t_arr + phase
            value = value + scale * (mu * np.cos(angle) + nu * np.sin(angle))
        return float(value) if value.ndim == 0 else value

    return DfeSolution(s_star=s_star, y0=float(s_star(0.0)), period=period, closed_form=True)
