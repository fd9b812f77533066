import warnings

import numpy as np
import pytest
from hypothesis import given

from qblob.errors import DomainError, TruncationWarning
from qblob.gaussian import GaussianState, fiducial, metaplectic_param_action, sample, translate
from qblob.symplectic import is_symplectic, random_symplectic, symplectic_inverse
from qblob.wigner import g_matrix, s_from_xy, wigner_gaussian, wigner_numeric, xy_from_g

from conftest import seeds, states


def _numeric_grid(state, lo=-6.0, hi=6.0, num=129):
    """wigner_numeric on [lo, hi]^2, sampling psi on a wider grid with the same spacing."""
    x = np.linspace(lo, hi, num)
    h = x[1] - x[0]
    pad = max(0.0, abs(state.x0[0]) + 12.0 * np.sqrt(state.hbar / state.X[0, 0]) - min(-lo, hi))
    k = int(np.ceil(pad / h))
    nodes = lo + h * np.arange(-k, num + k)
    return wigner_numeric(sample(state, nodes), np.linspace(lo, hi, num), x=x)


@pytest.mark.parametrize(
    "X, Y, G",
    [
        ([[1.0]], [[0.0]], np.eye(2)),
        ([[1.0]], [[1.0]], [[2.0, 1.0], [1.0, 1.0]]),
        ([[2.0]], [[0.0]], np.diag([2.0, 0.5])),
    ],
)
def test_g_matrix_examples(X, Y, G):
    np.testing.assert_allclose(g_matrix(X, Y), G, atol=1e-15)


@pytest.mark.parametrize(
    "X, Y, S",
    [
        ([[1.0]], [[0.0]], np.eye(2)),
        ([[4.0]], [[0.0]], np.diag([2.0, 0.5])),
        ([[1.0]], [[1.0]], [[1.0, 0.0], [1.0, 1.0]]),
    ],
)
def test_s_from_xy_examples(X, Y, S):
    np.testing.assert_allclose(s_from_xy(X, Y), S, atol=1e-15)


def test_wigner_gaussian_examples():
    W = wigner_gaussian(fiducial(1))
    np.testing.assert_array_equal(W.G, np.eye(2))
    assert W.prefactor == pytest.approx(1 / np.pi, abs=1e-16)
    W = wigner_gaussian(translate(fiducial(1), [1.0, 2.0]))
    np.testing.assert_array_equal(W.G, np.eye(2))
    np.testing.assert_array_equal(W.z0, [1.0, 2.0])
    W = wigner_gaussian(GaussianState(n=1, hbar=1.0, X=[[1.0]], Y=[[1.0]], z0=[0.0, 0.0]))
    np.testing.assert_allclose(W.G, [[2.0, 1.0], [1.0, 1.0]], atol=1e-15)


@pytest.mark.parametrize("hbar", [0.25, 2.0])
def test_wigner_numeric_other_hbar(hbar):
    state = GaussianState(n=1, hbar=hbar, X=[[1.5]], Y=[[0.5]], z0=[0.4, -0.3])
    num = _numeric_grid(state, lo=-4.0, hi=4.0, num=257)
    ref = wigner_gaussian(state).on_grid(num.x, num.p)
    assert np.max(np.abs(num.values - ref)) <= 1e-6 / (np.pi * hbar)


def test_wigner_gaussian_prefactor_scales_with_hbar():
    for n, h in ((1, 0.5), (2, 2.0)):
        assert wigner_gaussian(fiducial(n, h)).prefactor == pytest.approx((np.pi * h) ** -n)


def test_wigner_numeric_fiducial_values():
    x = np.linspace(-10, 10, 801)
    grid = wigner_numeric(sample(fiducial(1), x), p=np.array([0.0, 1.0]), x=np.array([0.0, 1.0]))
    assert grid.values[0, 0] == pytest.approx(1 / np.pi, abs=1e-8)
    assert grid.values[1, 1] == pytest.approx(np.exp(-2) / np.pi, abs=1e-8)
    assert grid.max_imag <= 1e-10


def test_wigner_numeric_rejects_off_grid_rows():
    x = np.linspace(-8, 8, 161)
    with pytest.raises(DomainError):
        wigner_numeric(sample(fiducial(1), x), p=[0.0], x=[0.05])


def test_wigner_numeric_warns_on_truncated_grid():
    x = np.linspace(-1, 1, 41)
    with pytest.warns(TruncationWarning):
        wigner_numeric(sample(fiducial(1), x), p=[0.0])


def test_xy_from_g_inverts_g_matrix():
    X = np.array([[2.0, 0.3], [0.3, 1.0]])
    Y = np.array([[0.5, -0.2], [-0.2, 0.1]])
    Xb, Yb = xy_from_g(g_matrix(X, Y))
    np.testing.assert_allclose(Xb, X, atol=1e-12)
    np.testing.assert_allclose(Yb, Y, atol=1e-12)


@given(state=states())
def test_g_matrix_is_spd_symplectic(state):
    G = g_matrix(state.X, state.Y)
    assert is_symplectic(G, 1e-9 * max(1.0, np.linalg.norm(G, 2) ** 2))
    assert np.linalg.eigvalsh(G)[0] > 0
    S = s_from_xy(state.X, state.Y)
    np.testing.assert_allclose(S.T @ S, G, atol=1e-10 * np.abs(G).max())


@given(state=states(n=1, x_range=(0.5, 3.0), hbar=1.0))
def test_wigner_numeric_matches_closed_form(state):
    with warnings.catch_warnings():
        warnings.simplefilter("error", TruncationWarning)
        num = _numeric_grid(state)
    ref = wigner_gaussian(state).on_grid(num.x, num.p)
    assert np.max(np.abs(num.values - ref)) <= 1e-6 / (np.pi * state.hbar)
    assert num.max_imag <= 1e-10


@given(state=states(n=1, x_range=(0.5, 3.0), hbar=1.0))
def test_wigner_normalization(state):
    grid = _numeric_grid(state, lo=-12.0, hi=12.0, num=241)
    assert grid.integral() == pytest.approx(1.0, abs=1e-6)


@given(state=states(n=1, x_range=(0.7, 2.0), hbar=1.0), seed=seeds)
def test_symplectic_covariance(state, seed):
    S = random_symplectic(1, seed, spread=0.4)
    moved = metaplectic_param_action(S, state)
    Sinv = symplectic_inverse(S)
    expected = Sinv.T @ wigner_gaussian(state).G @ Sinv
    np.testing.assert_allclose(wigner_gaussian(moved).G, expected, atol=1e-10 * np.abs(expected).max())
    # pointwise check: W' (z) = W(S^{-1} z), with W' from quadrature
    W0 = wigner_gaussian(state)
    if np.max(np.abs(moved.z0)) > 3 or moved.X[0, 0] < 0.15 or abs(moved.Y[0, 0]) > 4:
        return
    num = _numeric_grid(moved, num=97)
    xx, pp = np.meshgrid(num.x, num.p, indexing="ij")
    z = np.stack([xx, pp], axis=-1)
    pulled = W0(z @ Sinv.T)
    assert np.max(np.abs(num.values - pulled)) <= 1e-5
