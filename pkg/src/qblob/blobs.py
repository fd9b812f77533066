"""Quantum blobs: images of the ball |z|^2 <= hbar under affine symplectic maps.

A blob is stored canonically as (center, G) with G SPD and symplectic; the
set is {z : G (z - center).(z - center) <= hbar}. Storing G instead of a
generating matrix S removes the S -> SU ambiguity (U a symplectic rotation).
"""

from dataclasses import dataclass
from math import factorial

import numpy as np

from ._linalg import as_square, check_spd, symmetrize
from .errors import DomainError, NumericalError
from .gaussian import GaussianState
from .symplectic import (
    SPECTRUM_TOL,
    certify_symplectic,
    is_symplectic,
    polar_S_from_G,
    pre_iwasawa,
    symplectic_inverse,
    symplectic_spectrum,
)
from .wigner import g_matrix

BLOB_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class PhaseSpaceEllipsoid:
    """{z : shape (z - center).(z - center) <= hbar} for any SPD ``shape``."""

    n: int
    hbar: float
    center: np.ndarray
    shape: np.ndarray

    def __post_init__(self):
        shape = check_spd(as_square(self.shape, "shape"), "shape")
        center = np.asarray(self.center, dtype=float).reshape(-1)
        if shape.shape != (2 * self.n, 2 * self.n) or center.shape != (2 * self.n,):
            raise DomainError("ellipsoid dimensions do not match n")
        if not self.hbar > 0:
            raise DomainError(f"hbar must be positive, got {self.hbar}")
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "hbar", float(self.hbar))

    def contains(self, z):
        d = np.asarray(z, dtype=float) - self.center
        return np.einsum("...i,ij,...j->...", d, self.shape, d) <= self.hbar


@dataclass(frozen=True, eq=False)
class QuantumBlob:
    n: int
    hbar: float
    center: np.ndarray
    G: np.ndarray

    def __post_init__(self):
        G = as_square(self.G, "G")
        G = check_spd(G, "G", sym_tol=BLOB_TOL)
        center = np.asarray(self.center, dtype=float).reshape(-1)
        if G.shape != (2 * self.n, 2 * self.n) or center.shape != (2 * self.n,):
            raise DomainError("blob dimensions do not match n")
        if not is_symplectic(G, BLOB_TOL * max(1.0, np.linalg.norm(G, 2) ** 2)):
            raise DomainError("G is not symplectic, so the ellipsoid is not a quantum blob")
        object.__setattr__(self, "G", G)
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "hbar", float(self.hbar))

    def ellipsoid(self):
        return PhaseSpaceEllipsoid(n=self.n, hbar=self.hbar, center=self.center, shape=self.G)

    def contains(self, z):
        return self.ellipsoid().contains(z)

    def spectrum_is_unit(self, tol=SPECTRUM_TOL):
        return bool(np.max(np.abs(symplectic_spectrum(self.G) - 1.0)) <= tol)


def ball(n=1, hbar=1.0, center=None):
    """The blob B^{2n}(sqrt(hbar)) centred at ``center`` (default origin)."""
    c = np.zeros(2 * n) if center is None else center
    return QuantumBlob(n=n, hbar=hbar, center=c, G=np.eye(2 * n))


def blob_from_state(state):
    """The blob {G(z - z0)^2 <= hbar} read off the Wigner function of ``state``."""
    return QuantumBlob(n=state.n, hbar=state.hbar, center=state.z0, G=g_matrix(state.X, state.Y))


def state_from_blob(blob, tol=BLOB_TOL):
    """Inverse of :func:`blob_from_state` (the phase is set to zero).

    The blob is T B with T = G^{-1/2}. Pre-Iwasawa factoring T gives
    T = [[L, 0], [Q, L^{-1}]] U, and the lower factor is the inverse of the
    state matrix [[X^{1/2}, 0], [X^{-1/2} Y, X^{-1/2}]]. Hence
    X = L^{-2} and Y = -Q L^{-1}.
    """
    T = polar_S_from_G(blob.G)
    f = pre_iwasawa(T)
    Linv = np.linalg.inv(f.L)
    X = symmetrize(Linv @ Linv)
    Yraw = -f.Q @ Linv
    asym = float(np.max(np.abs(Yraw - Yraw.T), initial=0.0))
    if asym > 1e-8 * max(1.0, float(np.max(np.abs(Yraw)))):
        raise NumericalError(f"recovered Y is not symmetric ({asym:.3e})")
    state = GaussianState(n=blob.n, hbar=blob.hbar, X=X, Y=symmetrize(Yraw), z0=blob.center)
    err = float(np.max(np.abs(g_matrix(state.X, state.Y) - blob.G)))
    if err > tol * max(1.0, float(np.max(np.abs(blob.G)))):
        raise NumericalError(f"state does not reproduce the blob ({err:.3e})")
    return state


def blob_transform(S, blob):
    """Image of ``blob`` under the linear symplectic map ``S``.

    The centre moves to S center and G -> S^{-T} G S^{-1}.
    """
    S = as_square(S, "S")
    certify_symplectic(S, 1e-10, "S")
    Sinv = symplectic_inverse(S)
    G = symmetrize(Sinv.T @ blob.G @ Sinv)
    return QuantumBlob(n=blob.n, hbar=blob.hbar, center=S @ blob.center, G=G)


def blob_from_symplectic(S, center=None, hbar=1.0):
    """The blob S B^{2n}(sqrt(hbar)) + center."""
    n = S.shape[0] // 2
    return blob_transform(S, ball(n, hbar, np.zeros(2 * n) if center is None else np.linalg.solve(S, center)))


def blob_equal(a, b, tol=BLOB_TOL):
    if a.n != b.n:
        raise DomainError("blobs live in different dimensions")
    return bool(
        np.max(np.abs(a.center - b.center)) <= tol and np.max(np.abs(a.G - b.G)) <= tol
    )


def blob_volume(n, hbar=1.0):
    """Volume pi^n hbar^n / n! = h^n / (n! 2^n) of any 2n-dimensional blob."""
    if n < 1:
        raise ValueError(f"mode count must be positive, got {n}")
    return (np.pi * hbar) ** n / factorial(n)


def _conjugate_plane(blob, j):
    if not 1 <= j <= blob.n:
        raise DomainError(f"mode index must lie in 1..{blob.n}, got {j}")
    return [j - 1, blob.n + j - 1]


def section_area(blob, j):
    """Area of the slice through the centre by the (x_j, p_j) plane."""
    idx = _conjugate_plane(blob, j)
    sub = blob.G[np.ix_(idx, idx)]
    return float(np.pi * blob.hbar / np.sqrt(np.linalg.det(sub)))


def projection_area(blob, j):
    """Area of the orthogonal shadow on the (x_j, p_j) plane."""
    idx = _conjugate_plane(blob, j)
    sub = np.linalg.inv(blob.G)[np.ix_(idx, idx)]
    return float(np.pi * blob.hbar * np.sqrt(np.linalg.det(sub)))


def section_boundary(blob, j=1, num=256):
    """Closed polyline (num + 1 points, shape (num + 1, 2)) bounding the central (x_j, p_j) slice."""
    idx = _conjugate_plane(blob, j)
    sub = blob.G[np.ix_(idx, idx)]
    w, V = np.linalg.eigh(sub)
    theta = np.linspace(0.0, 2.0 * np.pi, num + 1)
    circle = np.stack([np.cos(theta), np.sin(theta)], axis=-1) * np.sqrt(blob.hbar)
    pts = circle @ (V / np.sqrt(w)).T
    return pts + blob.center[idx]
