"""Small dense helpers used across modules."""

import numpy as np
from scipy.linalg import expm as _expm

from .errors import DimensionError, DomainError


def as_square(M, name="matrix"):
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {M.shape}")
    return M


def as_even_square(M, name="matrix"):
    M = as_square(M, name)
    if M.shape[0] % 2:
        raise DimensionError(f"{name} must have even dimension, got {M.shape[0]}")
    return M


def blocks(M):
    """Split a 2n x 2n matrix into its (A, B, C, D) n x n blocks."""
    n = M.shape[0] // 2
    return M[:n, :n], M[:n, n:], M[n:, :n], M[n:, n:]


def from_blocks(A, B, C, D):
    return np.block([[A, B], [C, D]])


def symmetrize(M):
    return 0.5 * (M + M.T)


def asymmetry(M):
    M = np.asarray(M)
    if M.size == 0:
        return 0.0
    return float(np.max(np.abs(M - M.T)))


def check_spd(M, name="matrix", sym_tol=1e-10):
    """Return the symmetrized matrix, raising DomainError unless it is SPD."""
    M = as_square(M, name)
    scale = max(1.0, float(np.max(np.abs(M))))
    if asymmetry(M) > sym_tol * scale:
        raise DomainError(f"{name} is not symmetric (asymmetry {asymmetry(M):.3e})")
    M = symmetrize(M)
    w = np.linalg.eigvalsh(M)
    if w[0] <= 0.0:
        raise DomainError(f"{name} is not positive definite (min eigenvalue {w[0]:.3e})")
    return M


def check_symmetric(M, name="matrix", sym_tol=1e-10):
    M = as_square(M, name)
    scale = max(1.0, float(np.max(np.abs(M))))
    if asymmetry(M) > sym_tol * scale:
        raise DomainError(f"{name} is not symmetric (asymmetry {asymmetry(M):.3e})")
    return symmetrize(M)


def spd_power(M, power):
    """M**power for symmetric positive-definite M via eigendecomposition."""
    w, V = np.linalg.eigh(symmetrize(M))
    if w[0] <= 0.0:
        raise DomainError(f"matrix is not positive definite (min eigenvalue {w[0]:.3e})")
    return symmetrize((V * w**power) @ V.T)


def sqrtm_spd(M):
    return spd_power(M, 0.5)


def inv_sqrtm_spd(M):
    return spd_power(M, -0.5)


def expm(M):
    # scaling and squaring with a Pade approximant
    return _expm(np.asarray(M, dtype=float))
