from math import factorial

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qblob.blobs import (
    QuantumBlob,
    ball,
    blob_equal,
    blob_from_state,
    blob_from_symplectic,
    blob_transform,
    blob_volume,
    projection_area,
    section_area,
    section_boundary,
    state_from_blob,
)
from qblob.errors import DomainError
from qblob.gaussian import GaussianState, fiducial, translate
from qblob.sampling import random_blob
from qblob.symplectic import random_symplectic, random_symplectic_rotation, standard_J
from qblob.uncertainty import capacity_ellipsoid

from conftest import modes, seeds, states

SHEAR = np.array([[1.0, 1.0], [0.0, 1.0]])


def _coupled_blob():
    # S = [[I, 0], [C, I]] with C the swap matrix
    C = np.array([[0.0, 1.0], [1.0, 0.0]])
    S = np.block([[np.eye(2), np.zeros((2, 2))], [C, np.eye(2)]])
    return blob_from_symplectic(S)


def test_blob_from_state_examples():
    b = blob_from_state(fiducial(2))
    np.testing.assert_array_equal(b.G, np.eye(4))
    np.testing.assert_array_equal(b.center, np.zeros(4))
    s = GaussianState(n=1, hbar=1.0, X=[[1.0]], Y=[[1.0]], z0=[0.0, 0.0])
    np.testing.assert_allclose(blob_from_state(s).G, [[2.0, 1.0], [1.0, 1.0]], atol=1e-15)
    moved = blob_from_state(translate(s, [0.5, -1.0]))
    np.testing.assert_allclose(moved.G, blob_from_state(s).G, atol=0)
    np.testing.assert_array_equal(moved.center, [0.5, -1.0])


@pytest.mark.parametrize(
    "G, X, Y",
    [
        (np.eye(2), 1.0, 0.0),
        ([[2.0, 1.0], [1.0, 1.0]], 1.0, 1.0),
        (np.diag([2.0, 0.5]), 2.0, 0.0),
    ],
)
def test_state_from_blob_examples(G, X, Y):
    s = state_from_blob(QuantumBlob(n=1, hbar=1.0, center=[0.0, 0.0], G=G))
    np.testing.assert_allclose(s.X, [[X]], atol=1e-12)
    np.testing.assert_allclose(s.Y, [[Y]], atol=1e-12)


def test_blob_transform_examples():
    b = ball(1)
    assert blob_equal(blob_transform(np.eye(2), b), b)
    assert blob_equal(blob_transform(standard_J(1), b), b)
    np.testing.assert_allclose(blob_transform(SHEAR, b).G, [[1.0, -1.0], [-1.0, 2.0]], atol=1e-15)


def test_blob_transform_moves_center_by_S():
    b = ball(1, center=[1.0, 0.0])
    assert np.allclose(blob_transform(SHEAR, b).center, [1.0, 0.0])
    b = ball(1, center=[0.0, 1.0])
    assert np.allclose(blob_transform(SHEAR, b).center, [1.0, 1.0])


def test_blob_equal_examples():
    S = random_symplectic(2, 11)
    U = random_symplectic_rotation(2, 12)
    a = blob_from_symplectic(S)
    assert blob_equal(a, a)
    assert blob_equal(a, blob_from_symplectic(S @ U))
    assert not blob_equal(ball(1), blob_from_symplectic(np.diag([2.0, 0.5])))


def test_blob_rejects_non_symplectic_G():
    with pytest.raises(DomainError):
        QuantumBlob(n=1, hbar=1.0, center=[0.0, 0.0], G=np.diag([2.0, 2.0]))


def test_blob_volume_examples():
    assert blob_volume(1) == pytest.approx(np.pi, rel=1e-15)
    assert blob_volume(2) == pytest.approx(np.pi**2 / 2, rel=1e-15)
    h = 2 * np.pi
    assert h**3 / blob_volume(3) == pytest.approx(48.0, rel=1e-12)


@pytest.mark.parametrize("n", range(1, 7))
def test_cell_to_blob_ratio(n):
    h = 2 * np.pi * 0.7
    assert h**n / blob_volume(n, 0.7) == pytest.approx(factorial(n) * 2**n, rel=1e-12)


def test_section_projection_examples():
    assert section_area(ball(2), 1) == pytest.approx(np.pi)
    assert projection_area(ball(2), 2) == pytest.approx(np.pi)
    b = blob_from_symplectic(random_symplectic(1, 4))
    assert section_area(b, 1) == pytest.approx(np.pi, rel=1e-9)
    assert projection_area(b, 1) == pytest.approx(np.pi, rel=1e-9)
    b = _coupled_blob()
    assert section_area(b, 1) == pytest.approx(np.pi / np.sqrt(2), rel=1e-12)
    assert projection_area(b, 1) == pytest.approx(np.pi * np.sqrt(2), rel=1e-12)


def test_section_index_checked():
    with pytest.raises(DomainError):
        section_area(ball(2), 3)


def test_section_boundary_lies_on_ellipse():
    b = blob_from_symplectic(random_symplectic(1, 9), center=np.array([0.3, -0.2]), hbar=0.5)
    pts = section_boundary(b, 1, num=64)
    assert pts.shape == (65, 2)
    d = pts - b.center
    np.testing.assert_allclose(np.einsum("ki,ij,kj->k", d, b.G, d), 0.5, rtol=1e-12)
    np.testing.assert_allclose(pts[0], pts[-1], atol=1e-12)


@given(state=states())
def test_roundtrip_state_blob_state(state):
    back = state_from_blob(blob_from_state(state))
    assert back.same_parameters(state, 1e-9)


@given(n=modes, s1=seeds, s2=seeds, seed=seeds)
def test_blob_transform_composes(n, s1, s2, seed):
    rng = np.random.default_rng(seed)
    b = random_blob(n, rng, spread=0.6)
    S1 = random_symplectic(n, s1, spread=0.5)
    S2 = random_symplectic(n, s2, spread=0.5)
    two = blob_transform(S2, blob_transform(S1, b))
    one = blob_transform(S2 @ S1, b)
    assert blob_equal(two, one, 1e-9 * max(1.0, np.abs(one.G).max(), np.abs(one.center).max()))


@given(n=modes, seed=seeds)
def test_section_projection_inequalities(n, seed):
    b = random_blob(n, np.random.default_rng(seed))
    for j in range(1, n + 1):
        assert section_area(b, j) <= np.pi * b.hbar * (1 + 1e-9)
        assert projection_area(b, j) >= np.pi * b.hbar * (1 - 1e-9)


@given(n=modes, seed=seeds)
def test_section_equality_for_product_blobs(n, seed):
    # block-diagonal across modes: one 2x2 symplectic per conjugate pair
    rng = np.random.default_rng(seed)
    G = np.zeros((2 * n, 2 * n))
    for j in range(n):
        S = random_symplectic(1, int(rng.integers(2**31)))
        g = S.T @ S
        G[np.ix_([j, n + j], [j, n + j])] = g
    b = QuantumBlob(n=n, hbar=1.0, center=np.zeros(2 * n), G=G)
    for j in range(1, n + 1):
        assert section_area(b, j) == pytest.approx(np.pi, rel=1e-9)
        assert projection_area(b, j) == pytest.approx(np.pi, rel=1e-9)


@given(n=st.integers(1, 4), seed=seeds)
def test_every_blob_has_capacity_pi_hbar(n, seed):
    b = random_blob(n, np.random.default_rng(seed))
    assert capacity_ellipsoid(b.ellipsoid()) == pytest.approx(np.pi * b.hbar, rel=1e-9)
    assert b.spectrum_is_unit()


@pytest.mark.parametrize("n", [1, 2])
def test_monte_carlo_volume(n):
    rng = np.random.default_rng(100 + n)
    S = random_symplectic(n, 5 + n, spread=0.6)
    b = blob_from_symplectic(S)
    # bounding box of the ellipsoid: |z_i| <= sqrt(hbar (G^{-1})_ii)
    half = np.sqrt(np.diag(np.linalg.inv(b.G)))
    pts = rng.uniform(-half, half, size=(400_000, 2 * n))
    frac = np.mean(b.contains(pts))
    est = frac * np.prod(2 * half)
    assert est == pytest.approx(blob_volume(n), rel=0.01)
