"""Dense kernel: SVD, polar factors, PSD powers, Loewner order."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from schattenlab.matcore import (
    DEFAULT_TOL,
    Tolerances,
    as_matrix,
    herm_eigvals,
    loewner_leq,
    polar,
    psd_power,
    svd,
)


def test_as_matrix_accepts_lists():
    M = as_matrix([[1, 2], [3, 4]])
    assert M.dtype == np.complex128
    assert M.shape == (2, 2)


@pytest.mark.parametrize("bad", [np.ones(3), np.ones((2, 3)), np.ones((2, 2, 2))])
def test_as_matrix_rejects_non_square(bad):
    with pytest.raises(ValueError):
        as_matrix(bad)


def test_svd_diagonal_sorted():
    _, s, _ = svd(np.diag([3.0, 4.0]))
    assert_allclose(s, [4.0, 3.0])


def test_svd_single_singular_value():
    _, s, _ = svd(np.array([[0.0, 2.0], [0.0, 0.0]]))
    assert_allclose(s, [2.0, 0.0])


def test_svd_rank_one():
    # all-ones 2x2: s1 is the Frobenius norm sqrt(4), s2 = 0
    _, s, _ = svd(np.ones((2, 2)))
    assert_allclose(s, [2.0, 0.0], atol=1e-14)


def test_svd_reconstruction(gauss):
    for d in (1, 2, 5, 8):
        X = gauss(d)
        L, s, R = svd(X)
        err = np.linalg.norm(L @ np.diag(s) @ R.conj().T - X)
        assert err <= 1e-10 * max(1.0, np.linalg.norm(X))


def test_polar_left_diagonal_signs():
    parts = polar(np.diag([-2.0, 1.0]), side="left")
    assert_allclose(parts.unitary, np.diag([-1.0, 1.0]), atol=1e-14)
    assert_allclose(parts.modulus, np.diag([2.0, 1.0]), atol=1e-14)


def test_polar_zero_matrix():
    parts = polar(np.zeros((3, 3)), side="left")
    assert_allclose(parts.unitary, np.eye(3), atol=1e-14)
    assert_allclose(parts.modulus, np.zeros((3, 3)), atol=1e-14)


def test_polar_nilpotent_modulus_and_reconstruction():
    X = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
    parts = polar(X, side="left")
    assert_allclose(parts.modulus, np.diag([0.0, 1.0]), atol=1e-12)
    assert_allclose(parts.unitary @ parts.modulus, X, atol=1e-12)
    assert_allclose(parts.unitary.conj().T @ parts.unitary, np.eye(2), atol=1e-12)


@pytest.mark.parametrize("side", ["left", "right"])
def test_polar_reconstruction_random(gauss, side):
    for d in (2, 4, 6):
        X = gauss(d)
        parts = polar(X, side=side)
        rebuilt = parts.unitary @ parts.modulus if side == "left" else parts.modulus @ parts.unitary
        assert_allclose(rebuilt, X, atol=1e-10)
        assert_allclose(parts.unitary.conj().T @ parts.unitary, np.eye(d), atol=1e-10)
        evals = np.linalg.eigvalsh(parts.modulus)
        assert evals.min() >= -1e-10


def test_polar_modulus_matches_psd_power(gauss):
    X = gauss(5)
    parts = polar(X, side="left")
    direct = psd_power(X.conj().T @ X, 0.5)
    assert_allclose(parts.modulus, direct, atol=1e-9)


def test_polar_bad_side():
    with pytest.raises(ValueError):
        polar(np.eye(2), side="up")


def test_psd_power_scalar_root():
    assert_allclose(psd_power(np.diag([4.0]), 0.5), np.diag([2.0]))


def test_psd_power_imaginary_exponent():
    # exp(i * ln e) = cos 1 + i sin 1
    out = psd_power(np.diag([np.e]), 1j)
    assert_allclose(out[0, 0], 0.5403023058681398 + 0.8414709848078965j, rtol=1e-12)


def test_psd_power_annihilates_kernel():
    out = psd_power(np.diag([0.0, 1.0]), 0.7)
    assert_allclose(out, np.diag([0.0, 1.0]), atol=1e-14)


def test_psd_power_addition_law(gauss):
    G = gauss(4)
    P = G.conj().T @ G
    s, t = 0.7, 1.6
    assert_allclose(psd_power(P, s) @ psd_power(P, t), psd_power(P, s + t), atol=1e-9)


def test_psd_power_rejects_non_psd():
    with pytest.raises(ValueError):
        psd_power(np.diag([-1.0, 1.0]), 0.5)
    with pytest.raises(ValueError):
        psd_power(np.array([[0.0, 1.0], [0.0, 0.0]]), 0.5)


def test_psd_power_negative_exponent_pole():
    # negative real part plus a kernel is a genuine pole
    with pytest.raises(ValueError):
        psd_power(np.diag([0.0, 1.0]), -0.5)
    # invertible input is fine
    assert_allclose(psd_power(np.diag([4.0, 1.0]), -0.5), np.diag([0.5, 1.0]))


def test_herm_eigvals_sorted():
    assert_allclose(herm_eigvals(np.diag([1.0, 5.0, 3.0])), [5.0, 3.0, 1.0])
    assert_allclose(herm_eigvals(np.eye(3)), [1.0, 1.0, 1.0])


def test_herm_eigvals_swap_matrix():
    # roots of t^2 - 1
    assert_allclose(herm_eigvals(np.array([[0.0, 1.0], [1.0, 0.0]])), [1.0, -1.0], atol=1e-14)


def test_herm_eigvals_rejects_non_hermitian():
    with pytest.raises(ValueError):
        herm_eigvals(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_loewner_basic_cases():
    ok, witness = loewner_leq(np.zeros((2, 2)), np.eye(2))
    assert ok and witness == pytest.approx(1.0)
    ok, witness = loewner_leq(np.diag([2.0, 0.0]), np.eye(2))
    assert not ok and witness == pytest.approx(-1.0)
    X = np.diag([1.0, 2.0])
    ok, witness = loewner_leq(X, X)
    assert ok and witness == pytest.approx(0.0, abs=1e-14)


def test_loewner_rejects_non_hermitian():
    with pytest.raises(ValueError):
        loewner_leq(np.array([[0.0, 1.0], [0.0, 0.0]]), np.eye(2))


def test_loewner_implies_eigenvalue_domination(gauss):
    # X <= Z forces sorted eigenvalues to dominate entrywise
    for _ in range(5):
        G = gauss(4)
        X = (G + G.conj().T) / 2
        H = gauss(4)
        Z = X + H.conj().T @ H
        assert loewner_leq(X, Z).ok
        ex, ez = herm_eigvals(X), herm_eigvals(Z)
        assert np.all(ex <= ez + 1e-10)


def test_tolerances_are_immutable():
    with pytest.raises(AttributeError):
        DEFAULT_TOL.atol = 0.0
    loose = Tolerances(atol=1e-6)
    assert loose.atol == 1e-6 and loose.rtol == DEFAULT_TOL.rtol
