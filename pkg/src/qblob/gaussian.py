"""Squeezed coherent states as parameter objects.

A state is e^{i gamma/hbar} T(z0) Phi_M with M = X + iY, where

    Phi_M(x) = (pi hbar)^{-n/4} (det X)^{1/4} exp(-M x.x / 2 hbar)

and T(z0) is the Heisenberg-Weyl translation

    T(z0) psi(x) = exp(i (p0.x - p0.x0 / 2) / hbar) psi(x - x0).
"""

from dataclasses import dataclass, field, replace

import numpy as np

from ._linalg import as_square, blocks, check_spd, check_symmetric, symmetrize
from .errors import DomainError, NumericalError, SingularityError
from .symplectic import certify_symplectic, standard_J, symplectic_inverse
from .wigner import g_matrix

Y_ASYM_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class GaussianState:
    n: int
    hbar: float
    X: np.ndarray
    Y: np.ndarray
    z0: np.ndarray
    gamma: float = 0.0

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"mode count must be positive, got {self.n}")
        if not self.hbar > 0:
            raise DomainError(f"hbar must be positive, got {self.hbar}")
        X = check_spd(np.atleast_2d(np.asarray(self.X, dtype=float)), "X")
        Y = check_symmetric(np.atleast_2d(np.asarray(self.Y, dtype=float)), "Y")
        z0 = np.asarray(self.z0, dtype=float).reshape(-1)
        if X.shape != (self.n, self.n) or Y.shape != (self.n, self.n):
            raise DomainError(f"X and Y must be {self.n}x{self.n}")
        if z0.shape != (2 * self.n,):
            raise DomainError(f"z0 must have length {2 * self.n}")
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "Y", Y)
        object.__setattr__(self, "z0", z0)
        object.__setattr__(self, "hbar", float(self.hbar))
        object.__setattr__(self, "gamma", float(self.gamma))

    @property
    def M(self):
        return self.X + 1j * self.Y

    @property
    def x0(self):
        return self.z0[: self.n]

    @property
    def p0(self):
        return self.z0[self.n :]

    def same_parameters(self, other, tol=1e-9):
        """True iff (X, Y, z0) agree within ``tol`` (the phase is ignored)."""
        return (
            self.n == other.n
            and np.max(np.abs(self.X - other.X)) <= tol
            and np.max(np.abs(self.Y - other.Y)) <= tol
            and np.max(np.abs(self.z0 - other.z0)) <= tol
        )


def fiducial(n=1, hbar=1.0):
    """The vacuum state X = I, Y = 0, z0 = 0."""
    return GaussianState(n=n, hbar=hbar, X=np.eye(n), Y=np.zeros((n, n)), z0=np.zeros(2 * n))


def _points(state, x):
    x = np.asarray(x, dtype=float)
    if state.n == 1 and (x.ndim == 0 or x.shape[-1] != 1):
        x = x[..., None]
    if x.shape[-1] != state.n:
        raise DomainError(f"points must have trailing dimension {state.n}")
    return x


def evaluate(state, x):
    """Complex amplitude at configuration points ``x`` of shape (..., n).

    For one mode, ``x`` may also be a scalar or a flat array of positions.
    """
    x = _points(state, x)
    h = state.hbar
    d = x - state.x0
    quad = np.einsum("...i,ij,...j->...", d, state.M, d)
    phase = state.gamma + x @ state.p0 - 0.5 * state.p0 @ state.x0
    norm = (np.pi * h) ** (-state.n / 4) * np.linalg.det(state.X) ** 0.25
    return norm * np.exp(1j * phase / h - quad / (2 * h))


def derivatives(state, x):
    """Analytic (psi, grad psi, Hessian psi) at points of shape (..., n)."""
    x = _points(state, x)
    h = state.hbar
    psi = evaluate(state, x)
    v = 1j * state.p0 / h - (x - state.x0) @ state.M.T / h
    grad = psi[..., None] * v
    hess = psi[..., None, None] * (v[..., :, None] * v[..., None, :] - state.M / h)
    return psi, grad, hess


def translate(state, dz):
    """Apply the Heisenberg-Weyl operator T(dz).

    T(dz) T(z0) = exp(i sigma(dz, z0) / 2 hbar) T(dz + z0), so the carried
    phase picks up sigma(dz, z0) / 2 with sigma(z, z') = p.x' - p'.x.
    """
    dz = np.asarray(dz, dtype=float).reshape(-1)
    if dz.shape != state.z0.shape:
        raise DomainError(f"translation must have length {2 * state.n}")
    sigma = standard_J(state.n) @ dz @ state.z0
    return replace(state, z0=state.z0 + dz, gamma=state.gamma + 0.5 * sigma)


def metaplectic_param_action(S, state, tol=1e-10):
    """Parameters of S-hat applied to ``state``, up to a global phase.

    Pushes the Wigner shape forward, G' = S^{-T} G S^{-1}, and reads
    X' = (G'_22)^{-1}, Y' = X' G'_21 back from its blocks. The centre moves to
    S z0; ``gamma`` is left as is.
    """
    S = as_square(S, "S")
    if S.shape != (2 * state.n, 2 * state.n):
        raise DomainError(f"S must be {2 * state.n}x{2 * state.n}")
    certify_symplectic(S, tol, "S")
    Sinv = symplectic_inverse(S)
    Gp = symmetrize(Sinv.T @ g_matrix(state.X, state.Y) @ Sinv)
    n = state.n
    Xp = symmetrize(np.linalg.inv(symmetrize(Gp[n:, n:])))
    Yraw = Xp @ Gp[n:, :n]
    asym = float(np.max(np.abs(Yraw - Yraw.T), initial=0.0))
    if asym > tol * max(1.0, float(np.max(np.abs(Yraw)))):
        raise NumericalError(f"pushed-forward Y is not symmetric ({asym:.3e})")
    try:
        Xp = check_spd(Xp, "X'")
    except DomainError as exc:
        raise NumericalError(str(exc)) from exc
    return replace(state, X=Xp, Y=symmetrize(Yraw), z0=S @ state.z0)


def mobius_action(S, M):
    """Closed-form M_S = -i (C + i D M)(A + i B M)^{-1}.

    Agrees with :func:`metaplectic_param_action`; used as a fast path and as
    a cross-check.
    """
    A, B, C, D = blocks(np.asarray(S, dtype=float))
    M = np.atleast_2d(M)
    Ms = -1j * (C + 1j * D @ M) @ np.linalg.inv(A + 1j * B @ M)
    return 0.5 * (Ms + Ms.T)


def sc1_literal(S, X, Y):
    """M_S = i (A M + iB)(C M + iD)^{-1} evaluated exactly as written.

    This agrees with the true parameter action for S = J but not for shears;
    it is kept for comparison only.

    Raises:
        SingularityError: C M + iD has condition number above 1e12.
    """
    A, B, C, D = blocks(np.asarray(S, dtype=float))
    M = np.atleast_2d(X) + 1j * np.atleast_2d(Y)
    K = C @ M + 1j * D
    cond = np.linalg.cond(K)
    if not np.isfinite(cond) or cond > 1e12:
        raise SingularityError(f"CM + iD is singular (condition number {cond:.3e})")
    return 1j * (A @ M + 1j * B) @ np.linalg.inv(K)


@dataclass(frozen=True, eq=False)
class WavefunctionGrid:
    """Samples of a one-mode wavefunction on a uniform grid."""

    x: np.ndarray
    values: np.ndarray
    hbar: float = 1.0
    spacing: float = field(init=False)

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        if x.ndim != 1 or x.size < 3:
            raise DomainError("grid needs at least three one-dimensional nodes")
        d = np.diff(x)
        if np.any(d <= 0) or np.max(np.abs(d - d[0])) > 1e-9 * max(1.0, abs(d[0])):
            raise DomainError("grid nodes must be strictly increasing and uniform")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "values", np.asarray(self.values, dtype=complex))
        object.__setattr__(self, "spacing", float(d[0]))

    def norm(self):
        return float(np.sqrt(np.trapezoid(np.abs(self.values) ** 2, self.x)))

    def overlap(self, other):
        """Normalized |<self, other>| in [0, 1]."""
        ip = np.trapezoid(np.conj(self.values) * other.values, self.x)
        return float(abs(ip) / (self.norm() * other.norm()))


def uniform_grid(lo, hi, num):
    return np.linspace(lo, hi, num)


def sample(state, x):
    """Evaluate a one-mode state on grid nodes ``x``."""
    if state.n != 1:
        raise DomainError("wavefunction grids are one-mode")
    x = np.asarray(x, dtype=float)
    return WavefunctionGrid(x=x, values=evaluate(state, x), hbar=state.hbar)


def metaplectic_apply_numeric(S, state, x, min_nodes=4001):
    """Apply the metaplectic integral operator of S to a one-mode state.

    S-hat psi(x) = (2 pi i hbar)^{-1/2} Delta(W) ∫ exp(i W(x, x') / hbar) psi(x') dx'

    with W(x, x') = D x^2 / 2B - x x' / B + A x'^2 / 2B and
    Delta(W) = i^m |B|^{-1/2}, m = 0 if B > 0 else 1. The overall sign is
    the usual ±S-hat ambiguity.

    Args:
        S: 2x2 symplectic matrix with |B| > 1e-10.
        state: one-mode :class:`GaussianState` (non-Gaussian input is unsupported).
        x: output nodes.

    Returns:
        WavefunctionGrid on ``x``.
    """
    if not isinstance(state, GaussianState):
        raise DomainError("metaplectic_apply_numeric takes a GaussianState")
    if state.n != 1:
        raise DomainError("the integral oracle is one-mode only")
    S = as_square(S, "S")
    certify_symplectic(S, 1e-10, "S")
    (a, b), (c, d) = S
    if abs(b) <= 1e-10:
        raise DomainError(f"|det B| = {abs(b):.3e} is too small for the integral form")
    h = state.hbar
    x = np.asarray(x, dtype=float)

    X, Y = state.X[0, 0], state.Y[0, 0]
    x0, p0 = state.z0
    half = 12.0 * np.sqrt(h / X)
    # local frequency of the integrand bounds the node spacing
    xmax = np.max(np.abs(x)) if x.size else 0.0
    fmax = (abs(xmax / b) + abs(a / b) * (abs(x0) + half) + abs(p0) + abs(Y) * half) / h
    num = max(min_nodes, int(np.ceil(2 * half * fmax / 0.5)) + 1)
    xp = np.linspace(x0 - half, x0 + half, num)
    psi = evaluate(state, xp)

    m = 0 if 1.0 / b > 0 else 1
    pref = (2j * np.pi * h) ** -0.5 * (1j**m) * abs(1.0 / b) ** 0.5
    out = np.empty(x.shape, dtype=complex)
    w = np.full(num, xp[1] - xp[0])
    w[0] = w[-1] = 0.5 * w[0]
    base = psi * np.exp(1j * (a / (2 * b)) * xp**2 / h) * w
    for lo in range(0, x.size, 256):
        xs = x[lo : lo + 256]
        kern = np.exp(1j * ((d / (2 * b)) * xs[:, None] ** 2 - xs[:, None] * xp[None, :] / b) / h)
        out[lo : lo + 256] = pref * (kern @ base)
    return WavefunctionGrid(x=x, values=out, hbar=h)
