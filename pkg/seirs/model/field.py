"""
SEIRS vector field and its state Jacobian.

    S' = Lambda - beta*phi - mu*S + eta*R
    E' = beta*phi - (mu + eps)*E
    I' = eps*E - (mu + gamma)*I
    R' = gamma*I - (mu + eta)*R

with phi = phi(S, N, I), N = S + E + I + R, every coefficient evaluated at t.
"""

from typing import Callable, Union

import numpy as np

from seirs.errors import NonFiniteStateError
from seirs.model.incidence import IncidenceSpec
from seirs.model.models import ModelParams, StateVec

State = Union[StateVec, np.ndarray]
Rhs = Callable[[float, np.ndarray], np.ndarray]


def _as_array(x: State) -> np.ndarray:
    arr = x.as_array() if isinstance(x, StateVec) else np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise NonFiniteStateError(f"non-finite state {arr.tolist()}")
    return arr


def vector_field(params: ModelParams, inc: IncidenceSpec, t: float, x: State) -> np.ndarray:
    """(S', E', I', R') at time t"""
    s, e, i, r = _as_array(x)
    n = s + e + i + r
    lam, mu, beta, eta, eps, gamma = params.rates(t)
    force = beta * inc.phi(s, n, i)
    return np.array([
        lam - force - mu * s + eta * r,
        force - (mu + eps) * e,
        eps * e - (mu + gamma) * i,
        gamma * i - (mu + eta) * r,
    ])


def jacobian(params: ModelParams, inc: IncidenceSpec, t: float, x: State) -> np.ndarray:
    """
    4x4 derivative of the vector field in (S, E, I, R).

    N depends on all four components, so d(phi)/dN enters every column.
    """
    s, e, i, r = _as_array(x)
    n = s + e + i + r
    _, mu, beta, eta, eps, gamma = params.rates(t)
    d_s, d_n, d_i = inc.gradient(s, n, i)
    # beta * d(phi)/d(S, E, I, R)
    row = beta * np.array([d_s + d_n, d_n, d_n + d_i, d_n])
    return np.array([
        -row + np.array([-mu, 0.0, 0.0, eta]),
        row + np.array([0.0, -(mu + eps), 0.0, 0.0]),
        [0.0, eps, -(mu + gamma), 0.0],
        [0.0, 0.0, gamma, -(mu + eta)],
    ])


def make_rhs(params: ModelParams, inc: IncidenceSpec) -> Rhs:
    """Right-hand side f(t, y) in the solve_ivp calling convention"""

    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        return vector_field(params, inc, t, y)

    return rhs


def make_variational_rhs(params: ModelParams, inc: IncidenceSpec) -> Rhs:
    """
    Augmented system (x, Y) with Y' = Df(t, x) Y, state flattened to 4 + 16 entries.
    """

    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        x = y[:4]
        Y = y[4:].reshape(4, 4)
        dx = vector_field(params, inc, t, x)
        dY = jacobian(params, inc, t, x) @ Y
        return np.concatenate([dx, dY.ravel()])

    return rhs
