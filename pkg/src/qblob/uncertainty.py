"""Symplectic capacities of ellipsoids and uncertainty tests on covariance matrices.

Every symplectic capacity of {M z.z <= hbar} equals pi hbar / lambda_max,
lambda_max the largest Williamson eigenvalue of M, so capacities here are
exact and never approximate a general set function.
"""

from dataclasses import dataclass

import numpy as np

from ._linalg import as_even_square, check_spd, symmetrize
from .blobs import PhaseSpaceEllipsoid
from .errors import DomainError
from .symplectic import random_symplectic, standard_J, symplectic_spectrum
from .wigner import g_matrix

RS_TOL = 1e-12
PSD_TOL = 1e-10
CAPACITY_TOL = 1e-10


def capacity_ellipsoid(e):
    """pi hbar / lambda_max for the ellipsoid {shape (z - c).(z - c) <= hbar}."""
    lam = symplectic_spectrum(e.shape)
    return float(np.pi * e.hbar / lam[0])


@dataclass(frozen=True, eq=False)
class CovarianceMatrix:
    n: int
    hbar: float
    Sigma: np.ndarray

    def __post_init__(self):
        S = as_even_square(self.Sigma, "Sigma")
        if S.shape != (2 * self.n, 2 * self.n):
            raise DomainError(f"Sigma must be {2 * self.n}x{2 * self.n}")
        if not self.hbar > 0:
            raise DomainError(f"hbar must be positive, got {self.hbar}")
        # singular covariances have no ellipsoid; rejected here
        object.__setattr__(self, "Sigma", check_spd(S, "Sigma"))
        object.__setattr__(self, "hbar", float(self.hbar))

    @property
    def xx(self):
        return self.Sigma[: self.n, : self.n]

    @property
    def xp(self):
        return self.Sigma[: self.n, self.n :]

    @property
    def pp(self):
        return self.Sigma[self.n :, self.n :]


def covariance_from_state(state):
    """Sigma = (hbar / 2) G^{-1} for the Wigner shape G of ``state``."""
    G = g_matrix(state.X, state.Y)
    return CovarianceMatrix(n=state.n, hbar=state.hbar, Sigma=symmetrize(0.5 * state.hbar * np.linalg.inv(G)))


@dataclass(frozen=True)
class RSMode:
    mode: int
    lhs: float
    rhs: float
    slack: float
    passed: bool


def rs_check(cov):
    """Robertson-Schrodinger inequality (dx_j)^2 (dp_j)^2 >= cov(x_j, p_j)^2 + hbar^2 / 4, per mode."""
    out = []
    for j in range(cov.n):
        vx = cov.Sigma[j, j]
        vp = cov.Sigma[cov.n + j, cov.n + j]
        c = cov.Sigma[j, cov.n + j]
        lhs = float(vx * vp)
        rhs = float(c * c + 0.25 * cov.hbar**2)
        slack = lhs - rhs
        out.append(RSMode(j + 1, lhs, rhs, slack, slack >= -RS_TOL * cov.hbar**2))
    return out


def sigma_psd_check(cov):
    """(passed, min eigenvalue) for the Hermitian matrix Sigma + (i hbar / 2) J."""
    H = cov.Sigma + 0.5j * cov.hbar * standard_J(cov.n)
    m = float(np.linalg.eigvalsh(H)[0])
    return m >= -PSD_TOL * cov.hbar, m


def capacity_condition(cov):
    """(passed, capacity) for the ellipsoid Sigma^{-1} z.z / 2 <= 1.

    Written with level hbar that ellipsoid has shape (hbar / 2) Sigma^{-1};
    it passes when its capacity reaches pi hbar.
    """
    shape = symmetrize(0.5 * cov.hbar * np.linalg.inv(cov.Sigma))
    c = capacity_ellipsoid(PhaseSpaceEllipsoid(cov.n, cov.hbar, np.zeros(2 * cov.n), shape))
    return c >= np.pi * cov.hbar - CAPACITY_TOL * cov.hbar, c


def random_spd(dim, rng, cond=1e3):
    """Random SPD matrix with eigenvalues log-uniform in [1/sqrt(cond), sqrt(cond)]."""
    Qm, _ = np.linalg.qr(rng.standard_normal((dim, dim)))
    w = np.exp(rng.uniform(-0.5, 0.5, dim) * np.log(cond))
    return symmetrize((Qm * w) @ Qm.T)


def find_rs_psd_witness(seed=0, n=2, hbar=1.0, max_tries=10000):
    """Search for a covariance that passes Robertson-Schrodinger but fails the PSD test.

    Such a witness shows the two conditions are not equivalent.
    """
    rng = np.random.default_rng(seed)
    for _ in range(max_tries):
        Sigma = hbar * random_spd(2 * n, rng, cond=30.0)
        cov = CovarianceMatrix(n, hbar, Sigma)
        if all(r.passed for r in rs_check(cov)) and not sigma_psd_check(cov)[0]:
            return cov
    return None


def _ellipsoid(shape, hbar=1.0):
    n = shape.shape[0] // 2
    return PhaseSpaceEllipsoid(n, hbar, np.zeros(2 * n), shape)


def capacity_axiom_suite(seed=0, trials=50, n_max=3):
    """Check the capacity axioms on random ellipsoids.

    Returns a dict keyed SC1..SC4, each holding ``passed`` and the worst
    measured error (relative for SC2/SC3/SC4, an order violation for SC1).
    """
    rng = np.random.default_rng(seed)
    report = {}

    drift = 0.0
    for k in range(trials):
        n = int(rng.integers(1, n_max + 1))
        M = random_spd(2 * n, rng, cond=10.0)
        S = random_symplectic(n, int(rng.integers(2**31)), spread=0.5)
        Sinv = np.linalg.inv(S)
        c0 = capacity_ellipsoid(_ellipsoid(M))
        c1 = capacity_ellipsoid(_ellipsoid(symmetrize(Sinv.T @ M @ Sinv)))
        drift = max(drift, abs(c1 - c0) / c0)
    report["SC2"] = {"passed": drift <= 1e-9, "max_rel_drift": drift}

    err = 0.0
    for lam in (0.5, 2.0, 3.0):
        M = random_spd(4, rng, cond=10.0)
        c0 = capacity_ellipsoid(_ellipsoid(M))
        # lam * {M z.z <= hbar} = {M z.z / lam^2 <= hbar}
        c1 = capacity_ellipsoid(_ellipsoid(M / lam**2))
        err = max(err, abs(c1 - lam**2 * c0) / (lam**2 * c0))
    report["SC3"] = {"passed": err <= 1e-12, "max_rel_err": err}

    err = 0.0
    for n in range(1, n_max + 1):
        for R in (0.5, 1.0, 2.5):
            # |z| <= R  <=>  (1/R^2) z.z <= 1
            c = capacity_ellipsoid(PhaseSpaceEllipsoid(n, 1.0, np.zeros(2 * n), np.eye(2 * n) / R**2))
            err = max(err, abs(c - np.pi * R**2) / (np.pi * R**2))
    report["SC4"] = {"passed": err <= 1e-12, "max_rel_err": err}

    worst = -np.inf
    for k in range(trials):
        n = int(rng.integers(1, n_max + 1))
        M = random_spd(2 * n, rng, cond=10.0)
        B = rng.standard_normal((2 * n, 2 * n)) * 0.5
        # adding a PSD term shrinks the set
        inner = symmetrize(M + B @ B.T)
        c_in = capacity_ellipsoid(_ellipsoid(inner))
        c_out = capacity_ellipsoid(_ellipsoid(M))
        worst = max(worst, (c_in - c_out) / c_out)
    report["SC1"] = {"passed": bool(worst <= 1e-12), "max_rel_violation": float(worst)}
    return report
