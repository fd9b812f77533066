"""Fermi's function g_F and the Fermi ellipsoid of a squeezed coherent state.

For Phi_{X+iY} the zero set of

    g_F(x, p) = (p + Y x)^2 + X^2 x.x - hbar Tr X

bounds the ellipsoid M_F z.z <= hbar with

    M_F = [[X^2 + Y^2, Y], [Y, I]] / Tr X = S^T diag(X, X) S / Tr X,

S the lower-triangular symplectic matrix of the state.
"""

from dataclasses import dataclass

import numpy as np

from ._linalg import from_blocks, symmetrize
from .blobs import PhaseSpaceEllipsoid
from .errors import DomainError, NumericalError
from .gaussian import _points, derivatives
from .uncertainty import capacity_ellipsoid
from .wigner import s_from_xy


@dataclass(frozen=True, eq=False)
class FermiEllipsoid:
    n: int
    hbar: float
    M_F: np.ndarray
    center: np.ndarray

    def ellipsoid(self):
        return PhaseSpaceEllipsoid(n=self.n, hbar=self.hbar, center=self.center, shape=self.M_F)


def fermi_function(state, z):
    """g_F at phase-space points ``z`` (shape (..., 2n)), measured from the state's centre."""
    z = np.asarray(z, dtype=float)
    d = z - state.z0
    x, p = d[..., : state.n], d[..., state.n :]
    q = p + x @ state.Y.T
    Xx = x @ state.X.T
    return np.sum(q * q, axis=-1) + np.sum(Xx * Xx, axis=-1) - state.hbar * np.trace(state.X)


def fermi_ellipsoid(state, tol=1e-10):
    X, Y = state.X, state.Y
    tr = np.trace(X)
    MF = symmetrize(from_blocks(X @ X + Y @ Y, Y, Y, np.eye(state.n)) / tr)
    S = s_from_xy(X, Y)
    Z = np.zeros_like(X)
    via_s = S.T @ from_blocks(X, Z, Z, X) @ S / tr
    err = float(np.max(np.abs(via_s - MF)))
    if err > tol * max(1.0, float(np.max(np.abs(MF)))):
        raise NumericalError(f"M_F factorization through S fails by {err:.3e}")
    return FermiEllipsoid(n=state.n, hbar=state.hbar, M_F=MF, center=state.z0.copy())


def fermi_normal_form(state):
    """Eigenvalues of X (descending) and Tr X.

    In suitable symplectic coordinates the Fermi ellipsoid reads
    sum_j lam_j (x_j^2 + p_j^2) <= hbar Tr X.
    """
    lam = np.linalg.eigvalsh(state.X)[::-1]
    return lam.copy(), float(np.trace(state.X))


def fermi_capacity(state, tol=1e-9):
    """pi hbar Tr X / lam_max(X), cross-checked against the Williamson route.

    Raises:
        NumericalError: the two routes disagree, or the value leaves
            [pi hbar, n pi hbar].
    """
    lam, tr = fermi_normal_form(state)
    c = float(np.pi * state.hbar * tr / lam[0])
    c_w = capacity_ellipsoid(fermi_ellipsoid(state).ellipsoid())
    if abs(c - c_w) > tol * c:
        raise NumericalError(f"Fermi capacity {c} disagrees with Williamson value {c_w}")
    lo, hi = np.pi * state.hbar, state.n * np.pi * state.hbar
    if not (lo * (1 - tol) <= c <= hi * (1 + tol)):
        raise NumericalError(f"Fermi capacity {c} outside [{lo}, {hi}]")
    return c


def fermi_contains_blob(state):
    """Assert lam_j / Tr X <= 1 for every eigenvalue, so the ball fits in the normal form."""
    lam, tr = fermi_normal_form(state)
    ratios = lam / tr
    if np.any(ratios > 1.0 + 1e-12):
        raise NumericalError(f"containment ratio {ratios.max()} exceeds 1")
    return True


def apply_fermi_operator(state, x):
    """(-i hbar grad - grad Phi)^2 psi + hbar^2 (lap R / R) psi with analytic derivatives.

    Phi and R are the phase and modulus of the state in polar form.
    """
    h = state.hbar
    xv = _points(state, x)
    psi, grad, hess = derivatives(state, xv)
    d = xv - state.x0
    grad_phase = state.p0 - d @ state.Y.T
    lap_phase = -np.trace(state.Y)
    Xd = d @ state.X.T
    lap_R_over_R = np.sum(Xd * Xd, axis=-1) / h**2 - np.trace(state.X) / h
    lap = np.trace(hess, axis1=-2, axis2=-1)
    kinetic = (
        -(h**2) * lap
        + 2j * h * np.sum(grad_phase * grad, axis=-1)
        + 1j * h * lap_phase * psi
        + np.sum(grad_phase * grad_phase, axis=-1) * psi
    )
    return kinetic + h**2 * lap_R_over_R * psi


def fermi_operator_residual(state, x):
    """sup |g_F-hat psi| / sup |psi| on the nodes ``x``."""
    psi = derivatives(state, x)[0]
    if np.any(np.abs(psi) == 0.0):
        raise DomainError("modulus vanishes on the grid")
    r = apply_fermi_operator(state, x)
    return float(np.max(np.abs(r)) / np.max(np.abs(psi)))


def harmonic_fermi_residual(state, x):
    """sup |(-hbar^2 lap + |x|^2 - n hbar) psi| / sup |psi| for the vacuum."""
    h = state.hbar
    xv = _points(state, x)
    psi, _, hess = derivatives(state, xv)
    r = -(h**2) * np.trace(hess, axis1=-2, axis2=-1) + np.sum(xv * xv, axis=-1) * psi - state.n * h * psi
    return float(np.max(np.abs(r)) / np.max(np.abs(psi)))


def hermite_product(x, hbar=1.0):
    """prod_j x_j exp(-|x|^2 / 2 hbar) with analytic gradient and Laplacian (unnormalised)."""
    x = np.asarray(x, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    g = np.exp(-np.sum(x * x, axis=-1) / (2 * hbar))
    prod = np.prod(x, axis=-1)
    psi = prod * g
    # each factor x_j e^{-x_j^2/2h} has second derivative (x_j^3/h^2 - 3 x_j/h) e^{...}
    lap = psi * np.sum(x * x / hbar**2 - 3.0 / hbar, axis=-1)
    return psi, lap


def hermite_fermi_residual(x, hbar=1.0):
    """sup |(-hbar^2 lap + |x|^2 - 3 n hbar) psi| / sup |psi| for the first Hermite product."""
    x = np.asarray(x, dtype=float)
    xv = x[:, None] if x.ndim == 1 else x
    n = xv.shape[-1]
    psi, lap = hermite_product(xv, hbar)
    r = -(hbar**2) * lap + np.sum(xv * xv, axis=-1) * psi - 3 * n * hbar * psi
    return float(np.max(np.abs(r)) / np.max(np.abs(psi)))
