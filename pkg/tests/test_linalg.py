import numpy as np
import pytest

from fisherinfo.errors import DimensionMismatch, NotHermitian
from fisherinfo.linalg import (
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    adjoint,
    as_complex_matrix,
    eig_hermitian,
    identity,
    matmul,
    trace,
    unitary_exp,
)


def test_as_complex_matrix_rejects_non_square():
    with pytest.raises(DimensionMismatch):
        as_complex_matrix(np.zeros((2, 3)))


def test_as_complex_matrix_rejects_oversized():
    with pytest.raises(DimensionMismatch):
        as_complex_matrix(np.eye(65))


def test_trace_of_identity():
    assert trace(identity(3)) == pytest.approx(3.0)


def test_adjoint_is_an_involution():
    rng = np.random.default_rng(1)
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    assert np.array_equal(adjoint(adjoint(a)), a)


def test_trace_of_pauli_product_vanishes():
    assert abs(trace(matmul(PAULI_X, PAULI_Y))) < 1e-15


def test_trace_is_cyclic():
    rng = np.random.default_rng(2)
    for _ in range(50):
        a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        b = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        assert abs(trace(matmul(a, b)) - trace(matmul(b, a))) < 1e-12


def test_matmul_rejects_mismatched_shapes():
    with pytest.raises(DimensionMismatch):
        matmul(np.eye(2), np.eye(3))


def test_eig_identity_is_degenerate_ones():
    w, _ = eig_hermitian(identity(2))
    assert np.allclose(w, [1.0, 1.0])


def test_eig_pauli_z_ascending():
    w, _ = eig_hermitian(PAULI_Z)
    assert np.allclose(w, [-1.0, 1.0])


def test_eig_pauli_x_eigenpairs():
    w, v = eig_hermitian(PAULI_X)
    assert np.allclose(w, [-1.0, 1.0])
    for k in range(2):
        assert np.max(np.abs(PAULI_X @ v[:, k] - w[k] * v[:, k])) < 1e-12


def test_eig_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        eig_hermitian(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_eig_reconstructs_random_hermitian_matrices():
    rng = np.random.default_rng(7)
    for _ in range(1000):
        dim = int(rng.integers(2, 7))
        a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        a = (a + a.conj().T) / 2.0
        w, v = eig_hermitian(a)
        assert np.all(np.diff(w) >= 0)
        assert np.max(np.abs((v * w) @ adjoint(v) - a)) < 1e-9
        assert np.max(np.abs(adjoint(v) @ v - np.eye(dim))) < 1e-10


def test_unitary_exp_zero_angle_is_identity():
    assert np.allclose(unitary_exp(PAULI_Z, 0.0), np.eye(2), atol=1e-15)


def test_unitary_exp_half_turn_of_pauli_z():
    assert np.max(np.abs(unitary_exp(PAULI_Z, np.pi) + np.eye(2))) < 1e-12


def test_unitary_exp_quarter_x_turn_is_unitary():
    u = unitary_exp(PAULI_X, np.pi / 4.0)
    assert np.max(np.abs(adjoint(u) @ u - np.eye(2))) < 1e-10
    assert u[0, 0] == pytest.approx(np.cos(np.pi / 4.0))


def test_unitary_exp_group_property():
    rng = np.random.default_rng(11)
    for _ in range(100):
        dim = int(rng.integers(2, 5))
        g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        g = (g + g.conj().T) / 2.0
        s, t = rng.normal(size=2)
        lhs = unitary_exp(g, s) @ unitary_exp(g, t)
        assert np.max(np.abs(lhs - unitary_exp(g, s + t))) < 1e-9


def test_unitary_exp_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        unitary_exp(np.array([[0.0, 1.0], [0.0, 0.0]]), 1.0)
