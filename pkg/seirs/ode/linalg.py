"""
Small dense eigenvalue helpers for monodromy matrices
"""

import cmath

import numpy as np


def eigenvalues(M: np.ndarray) -> np.ndarray:
    """Eigenvalues; 2x2 by the characteristic quadratic, larger sizes by LAPACK"""
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"square matrix required, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix entries must be finite")
    if M.shape == (1, 1):
        return M[0].astype(complex)
    if M.shape == (2, 2):
        half_trace = 0.5 * (M[0, 0] + M[1, 1])
        det = M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]
        root = cmath.sqrt(half_trace * half_trace - det)
        return np.array([half_trace + root, half_trace - root])
    return np.linalg.eigvals(M)


def spectral_radius(M: np.ndarray) -> float:
    """max |lambda| over the eigenvalues of M"""
    return float(np.max(np.abs(eigenvalues(M))))


def floquet_moduli(M: np.ndarray) -> list:
    """Eigenvalue moduli of a monodromy matrix, largest first"""
    return sorted((float(v) for v in np.abs(eigenvalues(M))), reverse=True)


