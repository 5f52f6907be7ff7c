"""
Grid audit of the incidence hypotheses on the invariant box.

A failed check is certified by its witness point; a passed check is evidence
only, since the grid is finite.
"""

import logging
from typing import Dict, Optional, Tuple, Union

import numpy as np

from config.settings import get_settings
from seirs.model.incidence import IncidenceSpec, fd_step
from seirs.model.models import HypothesisCheck, HypothesisReport, InvariantBox

logger = logging.getLogger(__name__)

SMOOTHNESS_TOL = 1e-5
REFINEMENT_LEVELS = 8
REFINEMENT_FLOOR = 1e-6


def _axis(upper: float, density: int) -> np.ndarray:
    """(0, upper] sampled uniformly plus a geometric refinement toward 0"""
    uniform = np.linspace(upper / density, upper, density)
    refined = np.geomspace(upper * REFINEMENT_FLOOR, upper / density, REFINEMENT_LEVELS, endpoint=False)
    return np.unique(np.concatenate([refined, uniform]))


def _witness(fail: np.ndarray, S: np.ndarray, N: np.ndarray, I: np.ndarray) -> Dict[str, float]:
    idx = tuple(np.argwhere(fail)[0])
    return {"S": float(S[idx]), "N": float(N[idx]), "I": float(I[idx])}


def _scale(values: np.ndarray) -> float:
    finite = values[np.isfinite(values)]
    return max(1.0, float(np.max(np.abs(finite)))) if finite.size else 1.0


def check_hypotheses(
    inc: IncidenceSpec,
    box: Union[InvariantBox, Tuple[float, float]],
    grid_density: Optional[int] = None,
) -> HypothesisReport:
    """
    Audit phi on {0 <= S, I <= N, n_lower <= N <= n_upper}.

    Checks, each with a witness on failure:
      smoothness          partials agree with centered differences
      boundary            phi(0, N, I) = phi(S, N, 0) = 0
      saturation          0 < c1 <= phi/(S*I) <= c2 < inf, tightest grid constants reported
      monotonicity        phi non-decreasing in S and I, non-increasing in N
      ratio_monotonicity  phi/I non-increasing in I
    """
    if not isinstance(box, InvariantBox):
        box = InvariantBox(n_lower=float(box[0]), n_upper=float(box[1]))
    density = grid_density or get_settings().HYPOTHESIS_GRID

    s_axis = _axis(box.n_upper, density)
    i_axis = _axis(box.n_upper, density)
    n_axis = np.linspace(box.n_lower, box.n_upper, density)
    S, N, I = np.meshgrid(s_axis, n_axis, i_axis, indexing="ij")
    valid = (S <= N) & (I <= N)

    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        phi = np.broadcast_to(np.asarray(inc.phi(S, N, I), dtype=float), S.shape)
        checks = [
            _check_smoothness(inc, S, N, I, valid & (S >= box.n_upper / density) & (I >= box.n_upper / density)),
            _check_boundary(inc, s_axis, n_axis, i_axis),
        ]
        saturation, c1, c2 = _check_saturation(inc, box, phi, S, N, I, valid)
        checks.append(saturation)
        checks.append(_check_monotonicity(phi, S, N, I, valid))
        checks.append(_check_ratio(phi / I, S, N, I, valid))

    report = HypothesisReport(
        family=inc.label,
        grid_density=density,
        n_lower=box.n_lower,
        n_upper=box.n_upper,
        c1=c1,
        c2=c2,
        empirical_constants=inc.family.value == "custom",
        checks=checks,
    )
    failed = [c.name for c in checks if not c.passed]
    logger.info(f"[HYPOTHESES] {inc.label} on N in [{box.n_lower:g}, {box.n_upper:g}]: "
                f"{'all passed' if not failed else 'failed ' + ', '.join(failed)}")
    return report


def _check_smoothness(inc: IncidenceSpec, S, N, I, interior: np.ndarray) -> HypothesisCheck:
    s, n, i = S[interior], N[interior], I[interior]
    analytic = inc.gradient(s, n, i)
    hs, hn, hi = fd_step(s), fd_step(n), fd_step(i)
    numeric = (
        (inc.phi(s + hs, n, i) - inc.phi(s - hs, n, i)) / (2.0 * hs),
        (inc.phi(s, n + hn, i) - inc.phi(s, n - hn, i)) / (2.0 * hn),
        (inc.phi(s, n, i + hi) - inc.phi(s, n, i - hi)) / (2.0 * hi),
    )
    for label, a, fd in zip(("dphi/dS", "dphi/dN", "dphi/dI"), analytic, numeric):
        a = np.broadcast_to(np.asarray(a, dtype=float), s.shape)
        fd = np.broadcast_to(np.asarray(fd, dtype=float), s.shape)
        err = np.abs(a - fd)
        bad = ~np.isfinite(a) | ~np.isfinite(fd) | (err > SMOOTHNESS_TOL * np.maximum(np.abs(a), np.abs(fd)) + 1e-9)
        if np.any(bad):
            k = int(np.argmax(bad))
            return HypothesisCheck(
                name="smoothness",
                passed=False,
                detail=f"{label} differs from centered difference ({a[k]:.6g} vs {fd[k]:.6g})",
                witness={"S": float(s[k]), "N": float(n[k]), "I": float(i[k])},
            )
    return HypothesisCheck(name="smoothness", passed=True, detail="partials match centered differences")


def _check_boundary(inc: IncidenceSpec, s_axis, n_axis, i_axis) -> HypothesisCheck:
    i_with_zero = np.concatenate([[0.0], i_axis])
    s_with_zero = np.concatenate([[0.0], s_axis])
    N2, I2 = np.meshgrid(n_axis, i_with_zero, indexing="ij")
    at_s0 = np.broadcast_to(np.asarray(inc.phi(np.zeros_like(N2), N2, I2), dtype=float), N2.shape)
    S2, N3 = np.meshgrid(s_with_zero, n_axis, indexing="ij")
    at_i0 = np.broadcast_to(np.asarray(inc.phi(S2, N3, np.zeros_like(S2)), dtype=float), S2.shape)

    tol = 1e-12 * max(_scale(at_s0), _scale(at_i0))
    bad_s = ~np.isfinite(at_s0) | (np.abs(at_s0) > tol)
    if np.any(bad_s):
        idx = tuple(np.argwhere(bad_s)[0])
        return HypothesisCheck(
            name="boundary", passed=False, detail="phi(0, N, I) != 0",
            witness={"S": 0.0, "N": float(N2[idx]), "I": float(I2[idx])},
        )
    bad_i = ~np.isfinite(at_i0) | (np.abs(at_i0) > tol)
    if np.any(bad_i):
        idx = tuple(np.argwhere(bad_i)[0])
        return HypothesisCheck(
            name="boundary", passed=False, detail="phi(S, N, 0) != 0",
            witness={"S": float(S2[idx]), "N": float(N3[idx]), "I": 0.0},
        )
    return HypothesisCheck(name="boundary", passed=True, detail="phi vanishes on S = 0 and I = 0")


def _check_saturation(inc, box, phi, S, N, I, valid) -> Tuple[HypothesisCheck, float, float]:
    ratio = np.where(valid, phi / (S * I), np.nan)
    if np.any(valid & ~np.isfinite(ratio)):
        fail = valid & ~np.isfinite(ratio)
        return (
            HypothesisCheck(name="saturation", passed=False, detail="phi/(S*I) is not finite",
                            witness=_witness(fail, S, N, I)),
            float("nan"),
            float("nan"),
        )
    c1 = float(np.nanmin(ratio))
    c2 = float(np.nanmax(ratio))
    constants = inc.saturation_constants(box)
    if c1 <= 0.0 or not constants.usable:
        # the infimum escapes to 0 (or the supremum to infinity) off the grid
        target = ratio == c1 if (c1 <= 0.0 or constants.c1 <= 0.0) else ratio == c2
        return (
            HypothesisCheck(
                name="saturation",
                passed=False,
                detail=f"phi/(S*I) not bounded in (0, inf): bounds [{constants.c1:.6g}, {constants.c2:.6g}]",
                witness=_witness(valid & target, S, N, I),
            ),
            c1,
            c2,
        )
    return HypothesisCheck(name="saturation", passed=True, detail=f"c1={c1:.6g}, c2={c2:.6g}"), c1, c2


def _check_monotonicity(phi, S, N, I, valid) -> HypothesisCheck:
    tol = 1e-12 * _scale(phi)
    for axis, label, sign in ((0, "S", 1.0), (2, "I", 1.0), (1, "N", -1.0)):
        step = np.diff(phi, axis=axis) * sign
        lo = [slice(None)] * 3
        hi = [slice(None)] * 3
        lo[axis] = slice(None, -1)
        hi[axis] = slice(1, None)
        pair = valid[tuple(lo)] & valid[tuple(hi)]
        fail = pair & ~(step >= -tol)
        if np.any(fail):
            word = "non-decreasing" if sign > 0 else "non-increasing"
            return HypothesisCheck(
                name="monotonicity",
                passed=False,
                detail=f"phi is not {word} in {label}",
                witness=_witness(fail, S[tuple(lo)], N[tuple(lo)], I[tuple(lo)]),
            )
    return HypothesisCheck(name="monotonicity", passed=True, detail="phi monotone in S, I (up) and N (down)")


def _check_ratio(ratio, S, N, I, valid) -> HypothesisCheck:
    tol = 1e-12 * _scale(ratio)
    step = np.diff(ratio, axis=2)
    pair = valid[:, :, :-1] & valid[:, :, 1:]
    fail = pair & ~(step <= tol)
    if np.any(fail):
        return HypothesisCheck(
            name="ratio_monotonicity",
            passed=False,
            detail="phi/I is increasing in I",
            witness=_witness(fail, S[:, :, :-1], N[:, :, :-1], I[:, :, :-1]),
        )
    return HypothesisCheck(name="ratio_monotonicity", passed=True, detail="phi/I non-increasing in I")
