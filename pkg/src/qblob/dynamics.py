"""Quadratic Hamiltonians H(z) = R z.z / 2 and their exact flows.

Hamilton's equations read z' = K z with K = J R, so the flow is
S_t = exp(t K). Gaussian states stay Gaussian: the centre follows the
classical trajectory and the Wigner shape is transported by congruence.
"""

from dataclasses import dataclass

import numpy as np

from ._linalg import as_square, check_symmetric, expm
from .blobs import blob_transform
from .errors import AccuracyError, DomainError
from .gaussian import GaussianState, derivatives, evaluate, metaplectic_param_action
from .symplectic import standard_J, symplectic_defect

FLOW_CERT_TOL = 1e-9
FLOW_FAIL_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class QuadraticHamiltonian:
    n: int
    hbar: float
    R: np.ndarray

    def __post_init__(self):
        R = check_symmetric(as_square(self.R, "R"), "R")
        if R.shape != (2 * self.n, 2 * self.n):
            raise DomainError(f"R must be {2 * self.n}x{2 * self.n}")
        if not self.hbar > 0:
            raise DomainError(f"hbar must be positive, got {self.hbar}")
        object.__setattr__(self, "R", R)
        object.__setattr__(self, "hbar", float(self.hbar))

    @classmethod
    def kinetic_plus_potential(cls, m, Omega, hbar=1.0):
        """H = |p|^2 / 2m + Omega x.x / 2."""
        Omega = np.atleast_2d(np.asarray(Omega, dtype=float))
        n = Omega.shape[0]
        R = np.zeros((2 * n, 2 * n))
        R[:n, :n] = Omega
        R[n:, n:] = np.eye(n) / m
        return cls(n=n, hbar=hbar, R=R)

    def __call__(self, z):
        z = np.asarray(z, dtype=float)
        return 0.5 * np.einsum("...i,ij,...j->...", z, self.R, z)


def generator(H, tol=1e-12):
    """K = J R, an element of the symplectic Lie algebra (K J + J K^T = 0)."""
    J = standard_J(H.n)
    K = J @ H.R
    defect = float(np.max(np.abs(K @ J + J @ K.T)))
    if defect > tol * max(1.0, float(np.max(np.abs(K)))):
        raise AccuracyError(f"generator left the symplectic Lie algebra ({defect:.3e})")
    return K


def flow(H, t):
    """S_t = exp(t J R).

    Raises:
        AccuracyError: the symplectic defect of S_t exceeds 1e-6 (the result
            is not re-orthogonalized).
    """
    S = expm(t * generator(H))
    drift = symplectic_defect(S)
    if drift > FLOW_FAIL_TOL * max(1.0, np.linalg.norm(S, 2) ** 2):
        raise AccuracyError(f"flow drifted off Sp(2n) by {drift:.3e}")
    return S


@dataclass(frozen=True, eq=False)
class FlowResult:
    t: float
    S_t: np.ndarray
    z_t: np.ndarray
    X_t: np.ndarray
    Y_t: np.ndarray
    gamma_t: float
    hbar: float
    drift: float = 0.0

    @property
    def state(self):
        n = self.X_t.shape[0]
        return GaussianState(n=n, hbar=self.hbar, X=self.X_t, Y=self.Y_t, z0=self.z_t, gamma=self.gamma_t)


def action_phase(H, z0, t, nodes=64):
    """∫_0^t (sigma(z, z')/2 - H(z)) dtau along z_tau = S_tau z0 by Gauss-Legendre."""
    if nodes < 2:
        raise ValueError(f"need at least two quadrature nodes, got {nodes}")
    if t == 0:
        return 0.0
    u, w = np.polynomial.legendre.leggauss(nodes)
    tau = 0.5 * t * (u + 1.0)
    K = generator(H)
    J = standard_J(H.n)
    total = 0.0
    for ti, wi in zip(tau, w):
        z = expm(ti * K) @ z0
        zdot = K @ z
        total += wi * (0.5 * (J @ z) @ zdot - H(z))
    return float(0.5 * t * total)


def evolve_state(state0, H, t, quadrature_nodes=64):
    """Exact evolution of a squeezed coherent state under a quadratic Hamiltonian.

    The phase carries the symmetrized action integral only; it vanishes
    identically for homogeneous quadratic H, whereas the true wavefunction
    also picks up a metaplectic (Maslov-type) phase such as -arctan(t)/2 for
    the free particle. Phase-sensitive comparisons should use overlaps.
    """
    if quadrature_nodes < 2:
        raise ValueError(f"need at least two quadrature nodes, got {quadrature_nodes}")
    if H.n != state0.n:
        raise DomainError("state and Hamiltonian have different mode counts")
    if H.hbar != state0.hbar:
        raise DomainError("state and Hamiltonian carry different hbar")
    S = flow(H, t)
    moved = metaplectic_param_action(S, state0, tol=FLOW_CERT_TOL)
    gamma = state0.gamma + action_phase(H, state0.z0, t, quadrature_nodes)
    return FlowResult(
        t=float(t),
        S_t=S,
        z_t=moved.z0,
        X_t=moved.X,
        Y_t=moved.Y,
        gamma_t=gamma,
        hbar=state0.hbar,
        drift=symplectic_defect(S),
    )


def evolve_blob(blob0, H, t):
    return blob_transform(flow(H, t), blob0)


def apply_weyl_hamiltonian(state, H, x):
    """Weyl quantization of R z.z / 2 applied to a Gaussian, analytically.

    The cross term x.R_xp p quantizes to x.R_xp (-i hbar grad) - (i hbar / 2) Tr R_xp.
    """
    n, h = H.n, H.hbar
    Rxx, Rxp, Rpp = H.R[:n, :n], H.R[:n, n:], H.R[n:, n:]
    psi, grad, hess = derivatives(state, x)
    xv = np.asarray(x, dtype=float)
    if n == 1 and (xv.ndim == 0 or xv.shape[-1] != 1):
        xv = xv[..., None]
    pot = 0.5 * np.einsum("...i,ij,...j->...", xv, Rxx, xv) * psi
    cross = -1j * h * np.einsum("...i,ij,...j->...", xv, Rxp, grad) - 0.5j * h * np.trace(Rxp) * psi
    kin = -0.5 * h**2 * np.einsum("ij,...ij->...", Rpp, hess)
    return pot + cross + kin


def schrodinger_residual(state0, H, t, x, dt=1e-5):
    """Check that evolve_state solves i hbar dPsi/dt = H-hat Psi up to a global phase.

    Forms r = i hbar dPsi/dt - H-hat Psi on the nodes ``x`` (time derivative
    by central difference, space derivatives analytic) and returns
    (defect, lam) with lam = <Psi, r> / <Psi, Psi> and
    defect = |r - lam Psi| / |Psi|. A small defect means Psi solves the
    equation after multiplication by a time-dependent phase.
    """
    psi_t = evolve_state(state0, H, t).state
    psi_p = evolve_state(state0, H, t + dt).state
    psi_m = evolve_state(state0, H, t - dt).state
    psi = evaluate(psi_t, x)
    dpsi = (evaluate(psi_p, x) - evaluate(psi_m, x)) / (2 * dt)
    r = 1j * H.hbar * dpsi - apply_weyl_hamiltonian(psi_t, H, x)
    norm2 = np.vdot(psi, psi).real
    lam = np.vdot(psi, r) / norm2
    defect = float(np.linalg.norm((r - lam * psi).ravel()) / np.sqrt(norm2))
    return defect, complex(lam)
