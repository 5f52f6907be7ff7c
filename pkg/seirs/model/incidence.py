"""
Incidence functions phi(S, N, I) with their partial derivatives.

Built-in families carry closed-form partials and analytic saturation constants
c1 <= phi/(S*I) <= c2 on the invariant box; `custom` falls back to centered finite
differences and a grid estimate of the constants.

All evaluators are numpy-vectorized: S, N, I may be scalars or broadcastable arrays.
"""

import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, Optional, Tuple, Union

import numpy as np

from config.settings import get_settings
from seirs.errors import ModelValidationError
from seirs.model.models import InvariantBox

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]
Evaluator = Callable[[ArrayLike, ArrayLike, ArrayLike], ArrayLike]


class IncidenceFamily(str, Enum):
    MASS_ACTION = "mass_action"
    STANDARD = "standard"
    MICHAELIS_MENTEN = "michaelis_menten"
    HOLLING_II = "holling_ii"
    POWER_LAW = "power_law"
    SATURATED_POWER = "saturated_power"
    CUSTOM = "custom"


# ==================== Contact function C(N) ====================

_NUMBER = r"[0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?"
_TERM = re.compile(rf"^(?P<coef>{_NUMBER})?\s*\*?\s*(?P<var>N)?$")


@dataclass(frozen=True)
class RationalContact:
    """C(N) = (a + b*N) / (c + d*N)"""

    a: float
    b: float
    c: float
    d: float

    def value(self, n: ArrayLike) -> ArrayLike:
        return (self.a + self.b * n) / (self.c + self.d * n)

    def derivative(self, n: ArrayLike) -> ArrayLike:
        return (self.b * self.c - self.a * self.d) / (self.c + self.d * n) ** 2

    def __str__(self) -> str:
        return f"({self.a:g} + {self.b:g}*N) / ({self.c:g} + {self.d:g}*N)"

    @classmethod
    def parse(cls, text: str) -> "RationalContact":
        """
        Parse the restricted grammar `linear [/ linear]` where a linear form is a sum
        of terms `x`, `N`, `x*N` (optionally parenthesised), e.g. "N / (1 + N)".
        """
        parts = _split_division(text)
        numerator = _parse_linear(parts[0])
        denominator = _parse_linear(parts[1]) if len(parts) == 2 else (1.0, 0.0)
        if denominator == (0.0, 0.0):
            raise ValueError(f"zero denominator in contact function {text!r}")
        return cls(a=numerator[0], b=numerator[1], c=denominator[0], d=denominator[1])


def _split_division(text: str) -> list:
    depth = 0
    for pos, char in enumerate(text):
        if char == "(":
            depth += 1
        elif char == ")":
            depth -= 1
        elif char == "/" and depth == 0:
            return [text[:pos], text[pos + 1:]]
    return [text]


def _parse_linear(text: str) -> Tuple[float, float]:
    body = text.strip()
    while body.startswith("(") and body.endswith(")"):
        body = body[1:-1].strip()
    if not body:
        raise ValueError("empty linear expression in contact function")
    constant, slope = 0.0, 0.0
    for sign, term in re.findall(r"([+-]?)\s*([^+-]+)", body):
        match = _TERM.match(term.strip())
        if match is None or (match.group("coef") is None and match.group("var") is None):
            raise ValueError(f"cannot parse term {term.strip()!r} in {text!r}")
        coef = float(match.group("coef")) if match.group("coef") else 1.0
        if sign == "-":
            coef = -coef
        if match.group("var"):
            slope += coef
        else:
            constant += coef
    return constant, slope


# ==================== Incidence spec ====================

@dataclass(frozen=True)
class SaturationConstants:
    """c1 <= phi(S,N,I)/(S*I) <= c2 on the box; `empirical` when grid-estimated"""

    c1: float
    c2: float
    empirical: bool = False

    @property
    def usable(self) -> bool:
        return bool(np.isfinite(self.c1) and np.isfinite(self.c2) and self.c1 > 0.0)


@dataclass(frozen=True)
class IncidenceSpec:
    """phi(S, N, I) with partial derivatives"""

    family: IncidenceFamily
    phi: Evaluator
    d_s: Evaluator
    d_n: Evaluator
    d_i: Evaluator
    params: Dict[str, float] = field(default_factory=dict)
    contact: Optional[RationalContact] = None
    n_independent: bool = False

    def __call__(self, s: ArrayLike, n: ArrayLike, i: ArrayLike) -> ArrayLike:
        return self.phi(s, n, i)

    def gradient(self, s: ArrayLike, n: ArrayLike, i: ArrayLike) -> Tuple[ArrayLike, ArrayLike, ArrayLike]:
        return self.d_s(s, n, i), self.d_n(s, n, i), self.d_i(s, n, i)

    @property
    def label(self) -> str:
        if self.contact is not None:
            return f"{self.family.value}[C(N)={self.contact}]"
        if self.params:
            args = ", ".join(f"{k}={v:g}" for k, v in self.params.items())
            return f"{self.family.value}[{args}]"
        return self.family.value

    def saturation_constants(self, box: InvariantBox) -> SaturationConstants:
        return _saturation_constants(self, box)


# ==================== Built-in families ====================

def _zero(s: ArrayLike, n: ArrayLike, i: ArrayLike) -> ArrayLike:
    return np.zeros(np.broadcast(s, n, i).shape) if np.ndim(s) or np.ndim(n) or np.ndim(i) else 0.0


def mass_action() -> IncidenceSpec:
    """phi = S*I"""
    return IncidenceSpec(
        family=IncidenceFamily.MASS_ACTION,
        phi=lambda s, n, i: s * i,
        d_s=lambda s, n, i: i * np.ones_like(s) if np.ndim(s) else i,
        d_n=_zero,
        d_i=lambda s, n, i: s * np.ones_like(i) if np.ndim(i) else s,
        n_independent=True,
    )


def standard() -> IncidenceSpec:
    """phi = S*I/N"""
    return IncidenceSpec(
        family=IncidenceFamily.STANDARD,
        phi=lambda s, n, i: s * i / n,
        d_s=lambda s, n, i: i / n,
        d_n=lambda s, n, i: -s * i / n ** 2,
        d_i=lambda s, n, i: s / n,
    )


def michaelis_menten(contact: Union[RationalContact, str]) -> IncidenceSpec:
    """phi = C(N)/N * S*I"""
    if isinstance(contact, str):
        contact = RationalContact.parse(contact)
    C = contact

    return IncidenceSpec(
        family=IncidenceFamily.MICHAELIS_MENTEN,
        phi=lambda s, n, i: C.value(n) / n * s * i,
        d_s=lambda s, n, i: C.value(n) / n * i,
        d_n=lambda s, n, i: (C.derivative(n) / n - C.value(n) / n ** 2) * s * i,
        d_i=lambda s, n, i: C.value(n) / n * s,
        contact=C,
    )


def holling_ii(alpha: float) -> IncidenceSpec:
    """phi = S*I / (1 + alpha*I)"""
    if alpha < 0.0:
        raise ModelValidationError(f"Holling II alpha must be >= 0, got {alpha:g}")
    return IncidenceSpec(
        family=IncidenceFamily.HOLLING_II,
        phi=lambda s, n, i: s * i / (1.0 + alpha * i),
        d_s=lambda s, n, i: i / (1.0 + alpha * i) + 0.0 * s,
        d_n=_zero,
        d_i=lambda s, n, i: s / (1.0 + alpha * i) ** 2,
        params={"alpha": alpha},
        n_independent=True,
    )


def power_law(p: float, q: float) -> IncidenceSpec:
    """phi = I^p * S^q"""
    if p <= 0.0 or q <= 0.0:
        raise ModelValidationError(f"power law exponents must be positive, got p={p:g}, q={q:g}")
    return IncidenceSpec(
        family=IncidenceFamily.POWER_LAW,
        phi=lambda s, n, i: np.power(i, p) * np.power(s, q),
        d_s=lambda s, n, i: q * np.power(i, p) * np.power(s, q - 1.0),
        d_n=_zero,
        d_i=lambda s, n, i: p * np.power(i, p - 1.0) * np.power(s, q),
        params={"p": p, "q": q},
        n_independent=True,
    )


def saturated_power(p: float, q: float, alpha: float) -> IncidenceSpec:
    """phi = S * I^p / (1 + alpha * I^q)"""
    if p <= 0.0 or q <= 0.0 or alpha < 0.0:
        raise ModelValidationError(
            f"saturated power needs p, q > 0 and alpha >= 0, got p={p:g}, q={q:g}, alpha={alpha:g}"
        )

    def d_i(s, n, i):
        ip = np.power(i, p)
        iq = np.power(i, q)
        denom = 1.0 + alpha * iq
        return s * (p * np.power(i, p - 1.0) * denom - ip * alpha * q * np.power(i, q - 1.0)) / denom ** 2

    return IncidenceSpec(
        family=IncidenceFamily.SATURATED_POWER,
        phi=lambda s, n, i: s * np.power(i, p) / (1.0 + alpha * np.power(i, q)),
        d_s=lambda s, n, i: np.power(i, p) / (1.0 + alpha * np.power(i, q)) + 0.0 * s,
        d_n=_zero,
        d_i=d_i,
        params={"p": p, "q": q, "alpha": alpha},
        n_independent=True,
    )


def fd_step(x: ArrayLike) -> ArrayLike:
    return 1e-6 * np.maximum(1.0, np.abs(x))


def custom(
    phi: Evaluator,
    d_s: Optional[Evaluator] = None,
    d_n: Optional[Evaluator] = None,
    d_i: Optional[Evaluator] = None,
    n_independent: bool = False,
) -> IncidenceSpec:
    """
    User-supplied phi. Missing partials use centered finite differences with
    h = 1e-6 * max(1, |x|).
    """

    def fd_s(s, n, i):
        h = fd_step(s)
        return (phi(s + h, n, i) - phi(s - h, n, i)) / (2.0 * h)

    def fd_n(s, n, i):
        h = fd_step(n)
        return (phi(s, n + h, i) - phi(s, n - h, i)) / (2.0 * h)

    def fd_i(s, n, i):
        h = fd_step(i)
        return (phi(s, n, i + h) - phi(s, n, i - h)) / (2.0 * h)

    return IncidenceSpec(
        family=IncidenceFamily.CUSTOM,
        phi=phi,
        d_s=d_s or fd_s,
        d_n=d_n or fd_n,
        d_i=d_i or fd_i,
        n_independent=n_independent,
    )


def build_incidence(family: Union[IncidenceFamily, str], **options) -> IncidenceSpec:
    """Construct a built-in family from its name and keyword parameters"""
    family = IncidenceFamily(family)
    if family == IncidenceFamily.MASS_ACTION:
        return mass_action()
    if family == IncidenceFamily.STANDARD:
        return standard()
    if family == IncidenceFamily.MICHAELIS_MENTEN:
        return michaelis_menten(options["contact"])
    if family == IncidenceFamily.HOLLING_II:
        return holling_ii(options.get("alpha", 1.0))
    if family == IncidenceFamily.POWER_LAW:
        return power_law(options["p"], options["q"])
    if family == IncidenceFamily.SATURATED_POWER:
        return saturated_power(options["p"], options["q"], options.get("alpha", 1.0))
    raise ModelValidationError("custom incidence needs an evaluator; use incidence.custom()")


# ==================== Saturation constants ====================

def _exponent_range(exponent: float, upper: float) -> Tuple[float, float]:
    """Range of x**exponent over x in (0, upper]"""
    if exponent > 0.0:
        return 0.0, upper ** exponent
    if exponent < 0.0:
        return upper ** exponent, float("inf")
    return 1.0, 1.0


def _saturation_constants(spec: IncidenceSpec, box: InvariantBox) -> SaturationConstants:
    upper = box.n_upper
    family = spec.family

    if family == IncidenceFamily.MASS_ACTION:
        return SaturationConstants(1.0, 1.0)

    if family == IncidenceFamily.STANDARD:
        return SaturationConstants(1.0 / box.n_upper, 1.0 / box.n_lower)

    if family == IncidenceFamily.MICHAELIS_MENTEN:
        C = spec.contact
        # critical points of C(N)/N solve b*d*N^2 + 2*a*d*N + a*c = 0
        candidates = [box.n_lower, box.n_upper]
        coefficients = np.trim_zeros([C.b * C.d, 2.0 * C.a * C.d, C.a * C.c], "f")
        if len(coefficients) > 1:
            for root in np.roots(coefficients):
                if abs(root.imag) < 1e-14 and box.n_lower < root.real < box.n_upper:
                    candidates.append(float(root.real))
        nodes = np.array(candidates)
        contact_values = C.value(nodes)
        if np.any(contact_values <= 0.0):
            raise ModelValidationError(f"contact function {C} must be positive on the invariant box")
        ratios = contact_values / nodes
        return SaturationConstants(float(ratios.min()), float(ratios.max()))

    if family == IncidenceFamily.HOLLING_II:
        return SaturationConstants(1.0 / (1.0 + spec.params["alpha"] * upper), 1.0)

    if family == IncidenceFamily.POWER_LAW:
        i_low, i_high = _exponent_range(spec.params["p"] - 1.0, upper)
        s_low, s_high = _exponent_range(spec.params["q"] - 1.0, upper)
        return SaturationConstants(i_low * s_low, i_high * s_high)

    if family == IncidenceFamily.SATURATED_POWER:
        p, q, alpha = spec.params["p"], spec.params["q"], spec.params["alpha"]
        if p == 1.0:
            return SaturationConstants(1.0 / (1.0 + alpha * upper ** q), 1.0)
        nodes = np.geomspace(upper * 1e-9, upper, 4097)
        ratios = np.power(nodes, p - 1.0) / (1.0 + alpha * np.power(nodes, q))
        limit_at_zero = 0.0 if p > 1.0 else float("inf")
        return SaturationConstants(
            float(min(ratios.min(), limit_at_zero)),
            float(max(ratios.max(), limit_at_zero)),
        )

    # custom: empirical grid scan
    density = get_settings().CUSTOM_SATURATION_GRID
    axis = np.linspace(upper / density, upper, density)
    n_axis = np.linspace(box.n_lower, box.n_upper, density)
    s, n, i = np.meshgrid(axis, n_axis, axis, indexing="ij")
    ratios = np.asarray(spec.phi(s, n, i), dtype=float) / (s * i)
    logger.debug(f"[MODEL] Custom incidence saturation scanned on {density}^3 grid")
    return SaturationConstants(float(np.min(ratios)), float(np.max(ratios)), empirical=True)
