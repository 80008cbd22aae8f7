"""Norms, dual exponents, trace pairing."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from schattenlab.schatten import (
    dual_exponent,
    holder_check,
    schatten_norm,
    snorm,
    trace_pairing,
)


def scalar_lp(values, p):
    """Reference (quasi-)norm of a scalar sequence, away from the package."""
    mags = [abs(v) for v in values]
    if math.isinf(p):
        return max(mags) if mags else 0.0
    return math.fsum(m ** p for m in mags) ** (1.0 / p)


def test_norm_diagonal_values():
    assert snorm(np.diag([3.0, 4.0]), 2) == pytest.approx(5.0)
    assert snorm(np.array([[0.0, 2.0], [0.0, 0.0]]), 1) == pytest.approx(2.0)
    assert snorm(np.eye(3), 0.5) == pytest.approx(9.0)
    assert snorm(np.diag([3.0, 1.0]), np.inf) == pytest.approx(3.0)


def test_norm_value_record():
    nv = schatten_norm(np.eye(2), 0.5)
    assert nv.is_quasi and nv.p == 0.5 and nv.value == pytest.approx(4.0)
    nv = schatten_norm(np.eye(2), 1.0)
    assert not nv.is_quasi
    assert schatten_norm(np.zeros((3, 3)), 2).value == 0.0


@pytest.mark.parametrize("p", [0.0, -1.0, -np.inf])
def test_norm_rejects_nonpositive_exponent(p):
    with pytest.raises(ValueError):
        snorm(np.eye(2), p)


def test_frobenius_cross_check(gauss):
    X = gauss(6)
    assert snorm(X, 2) ** 2 == pytest.approx(np.sum(np.abs(X) ** 2), rel=1e-10)


@pytest.mark.parametrize("p", [0.5, 1, 1.5, 2, 3, np.inf])
def test_diagonal_reduction(gauss, p):
    diag = np.diag(gauss(5))
    assert snorm(np.diag(diag), p) == pytest.approx(scalar_lp(diag, p), rel=1e-12)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1), p=st.sampled_from([1.0, 1.5, 2.0, 3.0]))
def test_triangle_inequality(seed, p):
    r = np.random.default_rng(seed)
    X = r.standard_normal((4, 4)) + 1j * r.standard_normal((4, 4))
    Y = r.standard_normal((4, 4)) + 1j * r.standard_normal((4, 4))
    assert snorm(X + Y, p) <= snorm(X, p) + snorm(Y, p) + 1e-10


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1), p=st.sampled_from([0.3, 0.5, 0.8]))
def test_quasi_norm_power_triangle(seed, p):
    # below p = 1 the p-th powers are subadditive instead
    r = np.random.default_rng(seed)
    X = r.standard_normal((4, 4)) + 1j * r.standard_normal((4, 4))
    Y = r.standard_normal((4, 4)) + 1j * r.standard_normal((4, 4))
    assert snorm(X + Y, p) ** p <= snorm(X, p) ** p + snorm(Y, p) ** p + 1e-10


def test_unitary_invariance(gauss):
    X = gauss(4)
    for d in (4,):
        q1, _ = np.linalg.qr(gauss(d))
        q2, _ = np.linalg.qr(gauss(d))
        for p in (0.5, 1.3, 2, 4, np.inf):
            assert snorm(q1 @ X @ q2, p) == pytest.approx(snorm(X, p), rel=1e-9)


def test_dual_exponent_values():
    assert dual_exponent(2) == pytest.approx(2.0)
    assert dual_exponent(1.5) == pytest.approx(3.0)
    assert dual_exponent(4) == pytest.approx(4.0 / 3.0)


def test_dual_exponent_involution():
    for p in (1.1, 1.5, 2.0, 3.7, 10.0):
        assert dual_exponent(dual_exponent(p)) == pytest.approx(p, abs=1e-12)


@pytest.mark.parametrize("p", [1.0, 0.5, 0.0])
def test_dual_exponent_domain(p):
    with pytest.raises(ValueError):
        dual_exponent(p)


def test_trace_pairing_values():
    assert trace_pairing(np.eye(2), np.diag([2.0, 3.0])) == pytest.approx(5.0)
    assert trace_pairing(np.zeros((2, 2)), np.ones((2, 2))) == 0.0
    Y = np.array([[0.0, 1.0], [0.0, 0.0]])
    B = np.array([[0.0, 0.0], [1.0, 0.0]])
    assert trace_pairing(Y, B) == pytest.approx(1.0)


def test_trace_pairing_dimension_mismatch():
    with pytest.raises(ValueError):
        trace_pairing(np.eye(2), np.eye(3))


def test_holder_equality_at_identity():
    rep = holder_check(np.eye(2), np.eye(2), 2)
    assert rep.satisfied
    assert rep.lhs == pytest.approx(2.0)
    assert rep.rhs == pytest.approx(2.0)


def test_holder_orthogonal_supports():
    rep = holder_check(np.diag([1.0, 0.0]), np.diag([0.0, 1.0]), 1.5)
    assert rep.satisfied and rep.lhs == pytest.approx(0.0) and rep.rhs == pytest.approx(1.0)


def test_holder_random_pairs(gauss):
    for p in (1.3, 2.0, 4.0):
        rep = holder_check(gauss(4), gauss(4), p)
        assert rep.satisfied
        assert rep.lhs <= rep.rhs + 1e-9
