"""Symplectic linear algebra on phase space R^{2n}.

Coordinates are ordered (x_1..x_n, p_1..p_n) throughout, so every 2n x 2n
matrix splits into n x n blocks

    S = [[A, B],
         [C, D]].

Matrices are plain ``numpy`` arrays; functions that promise a symplectic
result certify it before returning.
"""

from dataclasses import dataclass

import numpy as np

from ._linalg import (
    as_even_square,
    blocks,
    check_spd,
    from_blocks,
    inv_sqrtm_spd,
    sqrtm_spd,
    symmetrize,
)
from .errors import DomainError, NumericalError

SYMPLECTIC_TOL = 1e-10
SPECTRUM_TOL = 1e-8


def standard_J(n):
    """The standard symplectic matrix [[0, I], [-I, 0]] for ``n`` modes."""
    if n < 1:
        raise ValueError(f"mode count must be positive, got {n}")
    I = np.eye(n)
    Z = np.zeros((n, n))
    return from_blocks(Z, I, -I, Z)


def symplectic_defect(M):
    """max |M^T J M - J|; zero for exactly symplectic ``M``."""
    M = as_even_square(M)
    J = standard_J(M.shape[0] // 2)
    return float(np.max(np.abs(M.T @ J @ M - J)))


def is_symplectic(M, tol=SYMPLECTIC_TOL):
    """True iff max |M^T J M - J| <= tol.

    Raises:
        DimensionError: ``M`` is not square of even dimension.
    """
    return symplectic_defect(M) <= tol


def is_symplectic_rotation(U, tol=SYMPLECTIC_TOL):
    """True iff ``U`` lies in Sp(2n) ∩ O(2n) within ``tol``."""
    U = np.asarray(U, dtype=float)
    if U.ndim != 2 or U.shape[0] != U.shape[1] or U.shape[0] % 2:
        return False
    orth = float(np.max(np.abs(U.T @ U - np.eye(U.shape[0]))))
    return orth <= tol and symplectic_defect(U) <= tol


def certify_symplectic(S, tol=SYMPLECTIC_TOL, what="matrix"):
    """Raise NumericalError unless ``S`` is symplectic.

    The tolerance is relative to ``max(1, |S|_2^2)`` since the round-off in
    S^T J S grows with the square of the norm.
    """
    scale = max(1.0, np.linalg.norm(S, 2) ** 2)
    d = symplectic_defect(S)
    if d > tol * scale:
        raise NumericalError(f"{what} failed symplectic certification (defect {d:.3e})")
    return S


def symplectic_inverse(S):
    """S^{-1} = -J S^T J, exact for symplectic ``S``."""
    A, B, C, D = blocks(S)
    return from_blocks(D.T, -B.T, -C.T, A.T)


def symplectic_spectrum(M):
    """Williamson symplectic eigenvalues of an SPD matrix, sorted descending.

    Computed as the positive eigenvalues of the Hermitian matrix
    i M^{1/2} J M^{1/2}, which is similar to iJM but keeps the ±λ pairing
    exact.

    Raises:
        DomainError: ``M`` is not symmetric positive definite.
    """
    M = as_even_square(M)
    M = check_spd(M, "M")
    n = M.shape[0] // 2
    R = sqrtm_spd(M)
    K = R @ standard_J(n) @ R
    w = np.linalg.eigvalsh(1j * K)
    return w[::-1][:n].copy()


def polar_S_from_G(G, tol=SYMPLECTIC_TOL):
    """Symplectic S with (S^{-1})^T S^{-1} = G, namely S = G^{-1/2}.

    The SPD square root of an SPD symplectic matrix is itself symplectic.
    """
    G = as_even_square(G, "G")
    G = check_spd(G, "G")
    if not is_symplectic(G, tol * max(1.0, np.linalg.norm(G, 2))):
        raise DomainError(f"G is not symplectic (defect {symplectic_defect(G):.3e})")
    S = inv_sqrtm_spd(G)
    return certify_symplectic(S, tol, "G^{-1/2}")


@dataclass(frozen=True)
class PreIwasawaFactors:
    """T = [[L, 0], [Q, L^{-1}]] @ U with L SPD, LQ symmetric, U a symplectic rotation."""

    L: np.ndarray
    Q: np.ndarray
    U: np.ndarray

    @property
    def lower(self):
        return from_blocks(self.L, np.zeros_like(self.L), self.Q, np.linalg.inv(self.L))

    def reassemble(self):
        return self.lower @ self.U


def pre_iwasawa(T, tol=SYMPLECTIC_TOL):
    """Factor a symplectic matrix as lower block-triangular times a rotation.

    Uses the blocks of ``T`` itself:
    L = (A A^T + B B^T)^{1/2}, Q = (C A^T + D B^T) L^{-1}.

    Raises:
        DomainError: ``T`` is not symplectic.
        NumericalError: reassembly or factor certification fails.
    """
    T = as_even_square(T, "T")
    scale = max(1.0, np.linalg.norm(T, 2) ** 2)
    if symplectic_defect(T) > tol * scale:
        raise DomainError(f"T is not symplectic (defect {symplectic_defect(T):.3e})")
    A, B, C, D = blocks(T)
    L = sqrtm_spd(A @ A.T + B @ B.T)
    Linv = np.linalg.inv(L)
    Q = (C @ A.T + D @ B.T) @ Linv
    lower = from_blocks(L, np.zeros_like(L), Q, Linv)
    U = np.linalg.solve(lower, T)
    factors = PreIwasawaFactors(L=L, Q=Q, U=U)

    err = float(np.max(np.abs(factors.reassemble() - T)))
    if err > tol * max(1.0, float(np.max(np.abs(T)))):
        raise NumericalError(f"pre-Iwasawa reassembly error {err:.3e}")
    if not is_symplectic_rotation(U, tol * scale):
        raise NumericalError("pre-Iwasawa rotation factor is not orthogonal-symplectic")
    return factors


def rotation_from_unitary(W):
    """The symplectic rotation [[A, -B], [B, A]] of a unitary W = A + iB."""
    A, B = W.real, W.imag
    return from_blocks(A, -B, B, A)


def random_unitary(n, rng):
    Z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    Qm, R = np.linalg.qr(Z)
    d = np.diag(R)
    return Qm * (d / np.abs(d))


def random_symplectic(n, seed, spread=1.0):
    """Seeded random element of Sp(2n, R).

    Product of a lower shear, an upper shear, a squeeze diag(Λ, Λ^{-1}) and a
    random symplectic rotation. Shear entries are uniform in
    [-spread, spread]; squeeze log-eigenvalues in [-spread/2, spread/2].
    """
    rng = np.random.default_rng(seed)
    I = np.eye(n)
    Z = np.zeros((n, n))

    C = symmetrize(rng.uniform(-spread, spread, (n, n)))
    Cp = symmetrize(rng.uniform(-spread, spread, (n, n)))
    O = random_unitary(n, rng).real
    O, _ = np.linalg.qr(O)
    lam = O @ np.diag(np.exp(rng.uniform(-spread / 2, spread / 2, n))) @ O.T
    lam = symmetrize(lam)

    lower = from_blocks(I, Z, C, I)
    upper = from_blocks(I, Cp, Z, I)
    squeeze = from_blocks(lam, Z, Z, np.linalg.inv(lam))
    rot = rotation_from_unitary(random_unitary(n, rng))
    S = lower @ squeeze @ upper @ rot
    return certify_symplectic(S, SYMPLECTIC_TOL, "random_symplectic")


def random_symplectic_rotation(n, seed):
    rng = np.random.default_rng(seed)
    return rotation_from_unitary(random_unitary(n, rng))
