"""Seeded generators of random test inputs."""

import numpy as np

from ._linalg import symmetrize
from .blobs import blob_from_symplectic
from .dynamics import QuadraticHamiltonian
from .gaussian import GaussianState
from .symplectic import random_symplectic


def random_state(n, rng, x_range=(0.5, 3.0), y_max=2.0, z_max=2.0, hbar=1.0):
    """Gaussian state with eig(X) in ``x_range``, |Y_ij| <= y_max, |z0_i| <= z_max."""
    Qm, _ = np.linalg.qr(rng.standard_normal((n, n)))
    X = symmetrize((Qm * rng.uniform(*x_range, n)) @ Qm.T)
    Y = symmetrize(rng.uniform(-y_max, y_max, (n, n)))
    z0 = rng.uniform(-z_max, z_max, 2 * n)
    return GaussianState(n=n, hbar=hbar, X=X, Y=Y, z0=z0)


def random_blob(n, rng, spread=1.0, z_max=2.0, hbar=1.0):
    S = random_symplectic(n, int(rng.integers(2**31)), spread)
    return blob_from_symplectic(S, center=rng.uniform(-z_max, z_max, 2 * n), hbar=hbar)


def random_hamiltonian(n, rng, scale=1.0, hbar=1.0):
    """H = R z.z / 2 with R symmetric, entries of order ``scale`` (not necessarily definite)."""
    A = rng.uniform(-scale, scale, (2 * n, 2 * n))
    return QuadraticHamiltonian(n=n, hbar=hbar, R=symmetrize(A))
