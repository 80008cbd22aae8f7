"""Unitary-orbit feasibility search for the p-power sum domination statement."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from schattenlab.conjecture import (
    FEASIBLE,
    ConjectureInstance,
    FeasibilityCertificate,
    bl_two_check,
    conjecture_sides,
    modulus_power,
    necessary_conditions,
    unitary_search,
    verify_certificate,
)
from schattenlab.inequalities import OperatorTuple, hk_ntuple


def pair_instance(rng, d, p, hermitian=False):
    def draw():
        G = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
        return (G + G.conj().T) / 2 if hermitian else G

    return ConjectureInstance(OperatorTuple((draw(), draw())), p)


def test_instance_direction_dispatch():
    T = OperatorTuple((np.eye(2), np.eye(2)))
    assert ConjectureInstance(T, 3.0).direction == "upper"
    assert ConjectureInstance(T, 1.5).direction == "reversed"
    assert ConjectureInstance(T, 3.0).sign == 1.0
    assert ConjectureInstance(T, 1.5).sign == -1.0
    with pytest.raises(ValueError):
        ConjectureInstance(T, 3.0, direction="reversed")
    with pytest.raises(ValueError):
        ConjectureInstance(T, 0.0)


def test_unitary_count_grows_quadratically():
    for n in (2, 3, 5):
        T = OperatorTuple((np.eye(2),) * n)
        assert ConjectureInstance(T, 3.0).n_unitaries == 1 + n * (n - 1) // 2


def test_modulus_power_on_non_normal_input():
    X = np.array([[0.0, 2.0], [0.0, 0.0]], dtype=complex)
    assert_allclose(modulus_power(X, 3.0), np.diag([0.0, 8.0]), atol=1e-12)


def test_sides_equal_pair_collapse(gauss):
    A = gauss(3)
    inst = ConjectureInstance(OperatorTuple((A, A.copy())), 3.0)
    eye = tuple(np.eye(3, dtype=complex) for _ in range(2))
    L, R = conjecture_sides(inst, eye)
    assert_allclose(L, R, atol=1e-10)


def test_sides_zero_tuple():
    Z = np.zeros((2, 2), dtype=complex)
    inst = ConjectureInstance(OperatorTuple((Z, Z)), 3.0)
    L, R = conjecture_sides(inst, (np.eye(2, dtype=complex),) * 2)
    assert_allclose(L, 0.0, atol=0.0)
    assert_allclose(R, 0.0, atol=0.0)


def test_sides_diagonal_scalar_reduction():
    # commuting diagonal input with identity unitaries is entrywise scalar
    A = np.diag([1.0, 2.0]).astype(complex)
    B = np.diag([1.0, -0.5]).astype(complex)
    inst = ConjectureInstance(OperatorTuple((A, B)), 4.0)
    L, R = conjecture_sides(inst, (np.eye(2, dtype=complex),) * 2)
    assert_allclose(np.diag(L).real, [16.0, 44.125])
    assert_allclose(np.diag(R).real, [16.0, 128.5])


def test_sides_rejects_wrong_unitary_count():
    inst = ConjectureInstance(OperatorTuple((np.eye(2), np.eye(2))), 3.0)
    with pytest.raises(ValueError):
        conjecture_sides(inst, (np.eye(2, dtype=complex),) * 3)


def test_necessary_conditions_equal_tuple():
    A = np.diag([1.0, 2.0]).astype(complex)
    nec = necessary_conditions(ConjectureInstance(OperatorTuple((A, A)), 3.0))
    assert nec.ok and nec.weyl_ok
    assert nec.trace.tag == "necessary_trace"
    assert abs(nec.trace.margin) <= 1e-12  # trace condition is tight here


@pytest.mark.parametrize("p", [1.5, 2.5, 3.0])
def test_necessary_trace_agrees_with_hk(rng, p):
    mats = tuple(
        (rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))) / np.sqrt(2)
        for _ in range(3)
    )
    T = OperatorTuple(mats)
    nec = necessary_conditions(ConjectureInstance(T, p))
    assert nec.trace.satisfied == hk_ntuple(T, p).satisfied
    assert nec.trace.satisfied


def test_search_equal_pair_instant():
    A = np.diag([1.0, 2.0]).astype(complex)
    cert = unitary_search(ConjectureInstance(OperatorTuple((A, A)), 3.0), seed=5)
    assert cert.status == FEASIBLE
    assert cert.iterations == 0 and cert.restart == 0
    assert cert.residual <= 1e-12


def test_search_diagonal_real_identity():
    A = np.diag([1.0, 2.0]).astype(complex)
    B = np.diag([1.0, -0.5]).astype(complex)
    cert = unitary_search(ConjectureInstance(OperatorTuple((A, B)), 4.0), seed=5)
    assert cert.status == FEASIBLE and cert.iterations == 0


def test_search_input_validation():
    inst = ConjectureInstance(OperatorTuple((np.eye(2), np.eye(2))), 3.0)
    with pytest.raises(ValueError):
        unitary_search(inst, budget=0)
    with pytest.raises(ValueError):
        unitary_search(inst, restarts=0)


def test_search_deterministic(rng):
    inst = pair_instance(rng, 3, 2.5)
    a = unitary_search(inst, seed=123)
    b = unitary_search(inst, seed=123)
    assert a.status == b.status and a.residual == b.residual and a.restart == b.restart
    for U, V in zip(a.unitaries, b.unitaries):
        assert np.array_equal(U, V)


def test_search_random_pair_feasible(rng):
    cert = unitary_search(pair_instance(rng, 2, 3.0), seed=7)
    assert cert.status == FEASIBLE and cert.residual <= 1e-7


def test_search_reversed_direction(rng):
    cert = unitary_search(pair_instance(rng, 3, 1.5), seed=7)
    assert cert.status == FEASIBLE and cert.residual <= 1e-7


def test_search_three_tuple(rng):
    mats = tuple(
        (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))) / np.sqrt(2)
        for _ in range(3)
    )
    cert = unitary_search(ConjectureInstance(OperatorTuple(mats), 3.0), seed=11)
    assert cert.status == FEASIBLE


def test_bl_two_zero_b(gauss):
    A = gauss(3)
    Z = np.zeros((3, 3), dtype=complex)
    # scalar reduction: 2|A|^p vs 2^(p-1)|A|^p, strict for p > 2
    cert = bl_two_check(A, Z, 3.0, seed=1)
    assert cert.status == FEASIBLE
    cert = bl_two_check(A, Z, 1.5, seed=1)
    assert cert.status == FEASIBLE


def test_bl_two_equal_unitary_pair():
    U = np.array([[0.0, 1.0], [-1.0, 0.0]], dtype=complex)
    cert = bl_two_check(U, U.copy(), 4.0, seed=1)
    assert cert.status == FEASIBLE and abs(cert.residual) <= 1e-10


def test_bl_two_hermitian_pair(rng):
    cert_inst = pair_instance(rng, 3, 2.5, hermitian=True)
    cert = bl_two_check(cert_inst.tuple.mats[0], cert_inst.tuple.mats[1], 2.5, seed=3)
    assert cert.status == FEASIBLE and cert.residual <= 1e-7


def test_certificate_reverification(rng):
    inst = pair_instance(rng, 3, 3.0)
    cert = unitary_search(inst, seed=9)
    assert cert.status == FEASIBLE
    ok, witness = verify_certificate(inst, cert)
    assert ok and witness >= -1e-7


def test_certificate_validation():
    bad = np.array([[1.0, 0.5], [0.0, 1.0]], dtype=complex)  # not unitary
    with pytest.raises(ValueError):
        FeasibilityCertificate(status=FEASIBLE, residual=0.0, unitaries=(bad, bad),
                               iterations=0, seed=0, restart=0, p=3.0, direction="upper")
    with pytest.raises(ValueError):
        FeasibilityCertificate(status="maybe", residual=0.0,
                               unitaries=(np.eye(2, dtype=complex),) * 2,
                               iterations=0, seed=0, restart=0, p=3.0, direction="upper")


def test_objective_invariant_under_global_conjugation(rng):
    inst = pair_instance(rng, 3, 3.0)
    q, _ = np.linalg.qr(rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)))
    rotated = ConjectureInstance(
        OperatorTuple(tuple(q @ M @ q.conj().T for M in inst.tuple.mats)), 3.0
    )
    eye = (np.eye(3, dtype=complex),) * 2
    res = []
    for item in (inst, rotated):
        L, R = conjecture_sides(item, eye)
        res.append(float(np.linalg.eigvalsh(L - R)[-1]))
    assert res[0] == pytest.approx(res[1], abs=1e-9)
