import numpy as np
import pytest
from hypothesis import given

from qblob._linalg import blocks, sqrtm_spd
from qblob.errors import DimensionError, DomainError, NumericalError
from qblob.symplectic import (
    certify_symplectic,
    is_symplectic,
    is_symplectic_rotation,
    polar_S_from_G,
    pre_iwasawa,
    random_symplectic,
    random_symplectic_rotation,
    standard_J,
    symplectic_inverse,
    symplectic_spectrum,
)
from qblob.uncertainty import random_spd

from conftest import modes, seeds


def test_standard_J_small_cases():
    np.testing.assert_array_equal(standard_J(1), [[0, 1], [-1, 0]])
    J2 = standard_J(2)
    np.testing.assert_array_equal(J2[:2, 2:], np.eye(2))
    np.testing.assert_array_equal(J2[2:, :2], -np.eye(2))
    np.testing.assert_array_equal(J2[:2, :2], 0)
    np.testing.assert_array_equal(standard_J(3) @ standard_J(3), -np.eye(6))


def test_standard_J_rejects_bad_n():
    with pytest.raises(ValueError):
        standard_J(0)


@pytest.mark.parametrize(
    "M, expected",
    [
        (standard_J(1), True),
        (np.diag([2.0, 0.5]), True),
        (np.diag([2.0, 2.0]), False),
    ],
)
def test_is_symplectic_examples(M, expected):
    assert is_symplectic(M) is expected


def test_is_symplectic_rejects_odd_dimension():
    with pytest.raises(DimensionError):
        is_symplectic(np.eye(3))


def test_certify_raises_on_non_symplectic():
    # a failed certification is a numerical failure, not bad input
    with pytest.raises(NumericalError):
        certify_symplectic(np.diag([2.0, 2.0]))


def test_symplectic_rotation_examples():
    assert is_symplectic_rotation(standard_J(1))
    assert not is_symplectic_rotation(np.diag([2.0, 0.5]))
    th = 0.7
    A, B = np.cos(th), np.sin(th)
    assert is_symplectic_rotation(np.array([[A, -B], [B, A]]))


def test_spectrum_examples():
    np.testing.assert_allclose(symplectic_spectrum(np.eye(4)), [1, 1], atol=1e-12)
    np.testing.assert_allclose(symplectic_spectrum(np.diag([1.0, 4.0, 1.0, 1.0])), [2, 1], atol=1e-12)


def test_spectrum_matches_eigenvalues_of_JM():
    # oracle: |Im| of the dense eigenvalues of J M, which come in +-i lam pairs
    rng = np.random.default_rng(3)
    for n in (1, 2, 3):
        M = random_spd(2 * n, rng, cond=20.0)
        ev = np.linalg.eigvals(standard_J(n) @ M)
        oracle = np.sort(np.abs(ev.imag))[::-1][::2]
        np.testing.assert_allclose(symplectic_spectrum(M), oracle, rtol=1e-9)


def test_spectrum_rejects_non_spd():
    with pytest.raises(DomainError):
        symplectic_spectrum(np.diag([1.0, -1.0]))


def test_polar_examples():
    np.testing.assert_allclose(polar_S_from_G(np.eye(2)), np.eye(2), atol=1e-14)
    np.testing.assert_allclose(
        polar_S_from_G(np.diag([2.0, 0.5])), np.diag([1 / np.sqrt(2), np.sqrt(2)]), atol=1e-14
    )
    G = np.array([[2.0, 1.0], [1.0, 1.0]])
    Sinv = np.linalg.inv(polar_S_from_G(G))
    np.testing.assert_allclose(Sinv.T @ Sinv, G, atol=1e-12)


def test_polar_rejects_non_symplectic_G():
    with pytest.raises(DomainError):
        polar_S_from_G(np.diag([2.0, 2.0]))


def test_pre_iwasawa_examples():
    f = pre_iwasawa(np.eye(2))
    np.testing.assert_allclose(f.L, [[1]])
    np.testing.assert_allclose(f.Q, [[0]], atol=1e-15)
    np.testing.assert_allclose(f.U, np.eye(2), atol=1e-15)

    f = pre_iwasawa(standard_J(1))
    np.testing.assert_allclose(f.L, [[1]])
    np.testing.assert_allclose(f.Q, [[0]], atol=1e-15)
    np.testing.assert_allclose(f.U, standard_J(1), atol=1e-15)

    f = pre_iwasawa(np.diag([2.0, 0.5]))
    np.testing.assert_allclose(f.L, [[2]])
    np.testing.assert_allclose(f.Q, [[0]], atol=1e-15)
    np.testing.assert_allclose(f.U, np.eye(2), atol=1e-15)


def test_random_symplectic_examples():
    S = random_symplectic(1, seed=0, spread=1.0)
    J = standard_J(1)
    assert np.max(np.abs(S.T @ J @ S - J)) <= 1e-12
    np.testing.assert_array_equal(random_symplectic(2, seed=5), random_symplectic(2, seed=5))
    S = random_symplectic(3, seed=7, spread=2.0)
    assert S.shape == (6, 6)
    assert is_symplectic(S, 1e-10 * np.linalg.norm(S, 2) ** 2)


@given(n=modes, seed=seeds)
def test_random_symplectic_is_symplectic(n, seed):
    S = random_symplectic(n, seed)
    assert is_symplectic(S, 1e-10)
    assert abs(np.linalg.det(S) - 1.0) <= 1e-8


@given(n=modes, seed=seeds)
def test_symplectic_inverse_is_inverse(n, seed):
    S = random_symplectic(n, seed)
    np.testing.assert_allclose(symplectic_inverse(S) @ S, np.eye(2 * n), atol=1e-9)


@given(n=modes, seed=seeds)
def test_spectrum_is_symplectic_invariant(n, seed):
    rng = np.random.default_rng(seed)
    M = random_spd(2 * n, rng, cond=10.0)
    S = random_symplectic(n, seed, spread=0.8)
    np.testing.assert_allclose(symplectic_spectrum(S.T @ M @ S), symplectic_spectrum(M), rtol=1e-8)


@given(n=modes, seed=seeds)
def test_spectrum_of_symplectic_spd_is_one(n, seed):
    S = random_symplectic(n, seed)
    np.testing.assert_allclose(symplectic_spectrum(S.T @ S), np.ones(n), atol=1e-8)


@given(n=modes, seed=seeds)
def test_pre_iwasawa_properties(n, seed):
    T = random_symplectic(n, seed)
    f = pre_iwasawa(T)
    assert np.max(np.abs(f.reassemble() - T)) <= 1e-10 * max(1.0, np.abs(T).max())
    assert is_symplectic_rotation(f.U, 1e-10)
    LQ = f.L @ f.Q
    assert np.max(np.abs(LQ - LQ.T)) <= 1e-10 * max(1.0, np.abs(LQ).max())
    np.testing.assert_allclose(f.L, f.L.T, atol=1e-12)


@given(n=modes, seed=seeds)
def test_pre_iwasawa_of_inverse_matches_block_formula(n, seed):
    # factorizing S^{-1} gives L = (D^T D + B^T B)^{1/2} in terms of S's blocks
    S = random_symplectic(n, seed)
    A, B, C, D = blocks(S)
    L = pre_iwasawa(symplectic_inverse(S)).L
    np.testing.assert_allclose(L, sqrtm_spd(D.T @ D + B.T @ B), atol=1e-9 * max(1.0, np.abs(L).max()))


@given(n=modes, seed=seeds)
def test_polar_properties(n, seed):
    S0 = random_symplectic(n, seed)
    G = S0.T @ S0
    S = polar_S_from_G(G)
    assert is_symplectic(S, 1e-10 * max(1.0, np.linalg.norm(S, 2) ** 2))
    Sinv = np.linalg.inv(S)
    np.testing.assert_allclose(Sinv.T @ Sinv, G, atol=1e-10 * max(1.0, np.abs(G).max()))


@given(n=modes, seed=seeds)
def test_random_rotation_is_rotation(n, seed):
    assert is_symplectic_rotation(random_symplectic_rotation(n, seed))
