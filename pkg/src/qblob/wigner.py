"""Wigner transforms of squeezed coherent states.

A state with M = X + iY has the Gaussian Wigner function

    W(z) = (pi hbar)^{-n} exp(-G (z - z0).(z - z0) / hbar),

    G = [[X + Y X^{-1} Y, Y X^{-1}],
         [X^{-1} Y,       X^{-1}  ]],

and G is SPD and symplectic. :func:`wigner_numeric` evaluates the defining
integral directly and serves as the independent check on the closed form.
"""

from dataclasses import dataclass

import numpy as np

from ._linalg import as_square, check_spd, check_symmetric, from_blocks, spd_power, symmetrize
from .errors import DomainError, NumericalError, warn_truncation
from .symplectic import certify_symplectic

G_TOL = 1e-9


def g_matrix(X, Y):
    """Shape matrix G of the Wigner function of Phi_{X+iY}; certified SPD and symplectic."""
    X = check_spd(X, "X")
    Y = check_symmetric(Y, "Y")
    if X.shape != Y.shape:
        raise DomainError(f"X and Y shapes differ: {X.shape} vs {Y.shape}")
    Xinv = np.linalg.inv(X)
    G = from_blocks(X + Y @ Xinv @ Y, Y @ Xinv, Xinv @ Y, Xinv)
    G = symmetrize(G)
    certify_symplectic(G, G_TOL, "G")
    return G


def s_from_xy(X, Y):
    """Lower-triangular symplectic S = [[X^{1/2}, 0], [X^{-1/2} Y, X^{-1/2}]] with S^T S = G."""
    X = check_spd(X, "X")
    Y = check_symmetric(Y, "Y")
    Xh = spd_power(X, 0.5)
    Xmh = spd_power(X, -0.5)
    S = from_blocks(Xh, np.zeros_like(X), Xmh @ Y, Xmh)
    certify_symplectic(S, G_TOL, "S(X, Y)")
    G = g_matrix(X, Y)
    err = float(np.max(np.abs(S.T @ S - G)))
    if err > 1e-10 * max(1.0, float(np.max(np.abs(G)))):
        raise NumericalError(f"S^T S differs from G by {err:.3e}")
    return S


def xy_from_g(G, tol=1e-8):
    """Recover (X, Y) from a Gaussian Wigner shape matrix by block inversion.

    X = (G_22)^{-1}, Y = X G_21 (symmetrized); the (1,1) block is checked
    against X + Y X^{-1} Y.
    """
    G = as_square(G, "G")
    n = G.shape[0] // 2
    G21, G22 = G[n:, :n], G[n:, n:]
    X = symmetrize(np.linalg.inv(symmetrize(G22)))
    Yraw = X @ G21
    scale = max(1.0, float(np.max(np.abs(Yraw))))
    if np.max(np.abs(Yraw - Yraw.T), initial=0.0) > tol * scale:
        raise NumericalError("recovered Y is not symmetric; G is not a Gaussian Wigner matrix")
    Y = symmetrize(Yraw)
    G11 = X + Y @ np.linalg.inv(X) @ Y
    err = float(np.max(np.abs(G11 - G[:n, :n])))
    if err > tol * max(1.0, float(np.max(np.abs(G11)))):
        raise NumericalError(f"(1,1) block of G inconsistent with recovered X, Y ({err:.3e})")
    return X, Y


@dataclass(frozen=True)
class WignerGaussian:
    G: np.ndarray
    z0: np.ndarray
    hbar: float

    @property
    def n(self):
        return self.G.shape[0] // 2

    @property
    def prefactor(self):
        return (np.pi * self.hbar) ** (-self.n)

    def __call__(self, z):
        """Evaluate at points ``z`` of shape (..., 2n)."""
        d = np.asarray(z, dtype=float) - self.z0
        q = np.einsum("...i,ij,...j->...", d, self.G, d)
        return self.prefactor * np.exp(-q / self.hbar)

    def on_grid(self, x, p):
        """Values on the tensor grid x (rows) by p (columns); n = 1 only."""
        if self.n != 1:
            raise DomainError("grid evaluation is defined for one mode")
        xx, pp = np.meshgrid(x, p, indexing="ij")
        return self(np.stack([xx, pp], axis=-1))


def wigner_gaussian(state):
    """Closed-form Wigner function of a squeezed coherent state (phase-blind)."""
    return WignerGaussian(G=g_matrix(state.X, state.Y), z0=np.array(state.z0, float), hbar=state.hbar)


@dataclass(frozen=True)
class PhaseSpaceGrid:
    x: np.ndarray
    p: np.ndarray
    values: np.ndarray
    hbar: float = 1.0
    max_imag: float = 0.0

    def integral(self):
        """Trapezoid quadrature of the samples over the grid."""
        return float(np.trapezoid(np.trapezoid(self.values, self.p, axis=1), self.x))


def wigner_numeric(grid, p, x=None, decay_tol=1e-12):
    """Wigner transform of sampled one-mode wavefunction by direct quadrature.

    W(x, p) = (2 pi hbar)^{-1} ∫ exp(-i p y / hbar) psi(x + y/2) conj(psi(x - y/2)) dy

    The y-integral runs over the grid itself: with psi sampled at spacing h,
    x +- y/2 stays on the grid for y = 2 h m. Output rows are the entries of
    ``x``, which must be grid nodes (default: every node).
    """
    xs = np.asarray(grid.x, dtype=float)
    psi = np.asarray(grid.values, dtype=complex)
    if xs.ndim != 1:
        raise DomainError("wigner_numeric supports one-mode grids only")
    h = xs[1] - xs[0]
    edge = max(abs(psi[0]), abs(psi[-1]))
    if edge > decay_tol * np.max(np.abs(psi)):
        warn_truncation(f"wavefunction amplitude {edge:.2e} at grid boundary")

    if x is None:
        idx = np.arange(xs.size)
    else:
        x = np.asarray(x, dtype=float)
        idx = np.rint((x - xs[0]) / h).astype(int)
        if np.any(idx < 0) or np.any(idx >= xs.size) or np.max(np.abs(xs[idx] - x)) > 1e-9 * max(1.0, abs(h)):
            raise DomainError("output x samples must coincide with wavefunction grid nodes")
    p = np.asarray(p, dtype=float)

    N = xs.size
    m = np.arange(-(N - 1), N)
    plus = idx[:, None] + m[None, :]
    minus = idx[:, None] - m[None, :]
    ok = (plus >= 0) & (plus < N) & (minus >= 0) & (minus < N)
    F = np.where(ok, psi[np.clip(plus, 0, N - 1)] * np.conj(psi[np.clip(minus, 0, N - 1)]), 0.0)
    y = 2.0 * h * m
    E = np.exp(-1j * np.outer(y, p) / grid.hbar)
    W = (F @ E) * (2.0 * h) / (2.0 * np.pi * grid.hbar)
    return PhaseSpaceGrid(
        x=xs[idx], p=p, values=W.real, hbar=grid.hbar, max_imag=float(np.max(np.abs(W.imag)))
    )
