"""
Periodic coefficient functions: constant plus cosine harmonics sharing one period.
"""

import logging
import math
from typing import Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, model_validator
from scipy.optimize import minimize_scalar

from config.settings import get_settings

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]


class Harmonic(BaseModel):
    """One cosine term amplitude * cos(2*pi*k*t/period + phase)"""

    model_config = ConfigDict(frozen=True)

    amplitude: float = Field(..., description="Amplitude of the cosine term")
    k: int = Field(1, ge=1, description="Frequency as a multiple of the base frequency")
    phase: float = Field(0.0, description="Phase shift in radians")


class PeriodicCoefficient(BaseModel):
    """
    An omega-periodic scalar coefficient

        f(t) = constant + sum_j amplitude_j * cos(2*pi*k_j*t/period + phase_j)

    Immutable; all operations are pure.
    """

    model_config = ConfigDict(frozen=True)

    constant: float = Field(..., description="Base level (equals the period mean)")
    harmonics: Tuple[Harmonic, ...] = Field(default=(), description="Cosine harmonics")
    period: float = Field(1.0, gt=0.0, description="Period omega")

    _amps: np.ndarray = PrivateAttr()
    _freqs: np.ndarray = PrivateAttr()
    _phases: np.ndarray = PrivateAttr()

    @model_validator(mode="after")
    def _finite(self) -> "PeriodicCoefficient":
        values = [self.constant] + [h.amplitude for h in self.harmonics] + [h.phase for h in self.harmonics]
        if not all(math.isfinite(v) for v in values):
            raise ValueError("periodic coefficient entries must be finite")
        return self

    def model_post_init(self, __context) -> None:
        self._amps = np.array([h.amplitude for h in self.harmonics], dtype=float)
        self._freqs = np.array([2.0 * math.pi * h.k / self.period for h in self.harmonics], dtype=float)
        self._phases = np.array([h.phase for h in self.harmonics], dtype=float)

    # ==================== Constructors ====================

    @classmethod
    def constant_value(cls, value: float, period: float = 1.0) -> "PeriodicCoefficient":
        return cls(constant=value, period=period)

    @classmethod
    def cosine(
        cls,
        base: float,
        relative_amplitude: float,
        period: float = 1.0,
        phase: float = 0.0,
        k: int = 1,
    ) -> "PeriodicCoefficient":
        """base * (1 + relative_amplitude * cos(2*pi*k*t/period + phase))"""
        if relative_amplitude == 0.0:
            return cls(constant=base, period=period)
        return cls(
            constant=base,
            harmonics=(Harmonic(amplitude=base * relative_amplitude, k=k, phase=phase),),
            period=period,
        )

    # ==================== Evaluation ====================

    @property
    def is_constant(self) -> bool:
        return not any(h.amplitude != 0.0 for h in self.harmonics)

    def evaluate(self, t: ArrayLike) -> ArrayLike:
        """Value at time t (scalar or array)"""
        if not self.harmonics:
            if np.ndim(t) == 0:
                return float(self.constant)
            return np.full(np.shape(t), float(self.constant))
        t_arr = np.asarray(t, dtype=float)
        angles = np.multiply.outer(t_arr, self._freqs) + self._phases
        value = self.constant + (self._amps * np.cos(angles)).sum(axis=-1)
        if np.ndim(value) == 0:
            return float(value)
        return value

    __call__ = evaluate

    def mean(self) -> float:
        """(1/period) * integral over one period; exact for the harmonic form"""
        return float(self.constant)

    def integral(self, t0: float, t1: float) -> float:
        """Exact integral of f over [t0, t1]"""
        total = self.constant * (t1 - t0)
        for amp, freq, phase in zip(self._amps, self._freqs, self._phases):
            total += amp / freq * (math.sin(freq * t1 + phase) - math.sin(freq * t0 + phase))
        return float(total)

    def extrema(self, grid: Optional[int] = None, tol: Optional[float] = None) -> Tuple[float, float]:
        """
        (min, max) of f over one period.

        Constant and single-harmonic coefficients are exact; several harmonics use a
        dense grid scan refined by golden-section search around the best nodes.
        """
        active = [h for h in self.harmonics if h.amplitude != 0.0]
        if not active:
            return float(self.constant), float(self.constant)
        if len(active) == 1:
            amp = abs(active[0].amplitude)
            return float(self.constant - amp), float(self.constant + amp)

        settings = get_settings()
        grid = grid or settings.EXTREMA_GRID
        tol = tol or settings.EXTREMA_TOL

        nodes = np.linspace(0.0, self.period, grid, endpoint=False)
        values = self.evaluate(nodes)
        lower = self._refine(nodes, values, sign=1.0, tol=tol)
        upper = -self._refine(nodes, -values, sign=-1.0, tol=tol)
        return float(lower), float(upper)

    def _refine(self, nodes: np.ndarray, values: np.ndarray, sign: float, tol: float) -> float:
        """Golden-section refinement of min(sign * f) around the best grid node"""
        i = int(np.argmin(values))
        step = nodes[1] - nodes[0]
        bracket = (nodes[i] - step, nodes[i], nodes[i] + step)
        best = float(values[i])
        try:
            result = minimize_scalar(
                lambda t: sign * self.evaluate(t),
                bracket=bracket,
                method="golden",
                tol=tol,
            )
            best = min(best, float(result.fun))
        except ValueError as e:
            # flat neighbourhood: the grid value is already the extremum
            logger.debug(f"[PERIODIC] Golden refinement skipped: {e}")
        return best

    # ==================== Algebra ====================

    def _check_period(self, other: "PeriodicCoefficient") -> None:
        if not math.isclose(self.period, other.period, rel_tol=1e-12, abs_tol=0.0):
            raise ValueError(f"period mismatch: {self.period} != {other.period}")

    def __add__(self, other: Union["PeriodicCoefficient", float]) -> "PeriodicCoefficient":
        if isinstance(other, PeriodicCoefficient):
            self._check_period(other)
            return PeriodicCoefficient(
                constant=self.constant + other.constant,
                harmonics=self.harmonics + other.harmonics,
                period=self.period,
            )
        return PeriodicCoefficient(
            constant=self.constant + float(other),
            harmonics=self.harmonics,
            period=self.period,
        )

    __radd__ = __add__

    def scaled(self, factor: float) -> "PeriodicCoefficient":
        return PeriodicCoefficient(
            constant=self.constant * factor,
            harmonics=tuple(
                Harmonic(amplitude=h.amplitude * factor, k=h.k, phase=h.phase) for h in self.harmonics
            ),
            period=self.period,
        )

