import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hlusim import PauliRep, RepresentationError, ShapeError
from hlusim.pauli import (SIGMA, SWAP, X, Y, Z, from_pauli, is_exchange_symmetric, random_hermitian,
                          random_su2, rotation, so3_to_su2, split_sym_antisym, su2_exp, su2_to_so3,
                          swap_conjugate, to_pauli)

from oracles import pauli_coefficients, rotation_from_su2

floats = st.floats(-5, 5, allow_nan=False)
vec3 = st.lists(floats, min_size=3, max_size=3)
mat3 = st.lists(vec3, min_size=3, max_size=3)


@given(st.floats(-5, 5), vec3, vec3, mat3)
@settings(max_examples=60, deadline=None)
def test_round_trip_pauli_matrix(alpha, a, b, m):
    p = PauliRep(alpha, a, b, m)
    assert to_pauli(from_pauli(p)).allclose(p, atol=1e-12)


def test_coefficients_match_trace_oracle(rng):
    for _ in range(20):
        h = random_hermitian(rng)
        p = to_pauli(h)
        c = pauli_coefficients(h)
        assert np.isclose(p.alpha, c[0, 0], atol=1e-12)
        np.testing.assert_allclose(p.local_a, c[1:, 0], atol=1e-12)
        np.testing.assert_allclose(p.local_b, c[0, 1:], atol=1e-12)
        np.testing.assert_allclose(p.m, c[1:, 1:], atol=1e-12)


def test_xy_interaction_matrix():
    h = from_pauli(PauliRep.interaction(np.diag([1.0, 1.0, 0.0])))
    np.testing.assert_allclose(h, np.kron(X, X) + np.kron(Y, Y), atol=1e-15)


def test_non_hermitian_rejected():
    h = np.zeros((4, 4), dtype=complex)
    h[0, 1] = 1.0
    with pytest.raises(RepresentationError):
        to_pauli(h)


def test_wrong_shape_rejected():
    with pytest.raises(ShapeError):
        to_pauli(np.eye(3))
    with pytest.raises(ShapeError):
        PauliRep(0.0, [1, 2], [0, 0, 0], np.eye(3))


def test_split_and_swap_symmetry(rng):
    for _ in range(10):
        p = to_pauli(random_hermitian(rng))
        m_s, m_a = split_sym_antisym(p)
        np.testing.assert_allclose(m_s + m_a, p.m, atol=1e-14)
        np.testing.assert_allclose(m_s, m_s.T, atol=0)
        np.testing.assert_allclose(m_a, -m_a.T, atol=0)
        # exchanging the qubits transposes M and swaps the local fields
        q = to_pauli(swap_conjugate(from_pauli(p)))
        np.testing.assert_allclose(q.m, p.m.T, atol=1e-12)
        np.testing.assert_allclose(q.local_a, p.local_b, atol=1e-12)


def test_swap_is_exchange_symmetric_and_cnot_is_not(cnot):
    assert is_exchange_symmetric(SWAP)
    assert is_exchange_symmetric(np.kron(X, X))
    assert not is_exchange_symmetric(cnot)


def test_su2_to_so3_matches_entrywise_oracle(rng):
    for _ in range(20):
        u = random_su2(rng)
        r = su2_to_so3(u)
        np.testing.assert_allclose(r, rotation_from_su2(u), atol=1e-12)
        np.testing.assert_allclose(r @ r.T, np.eye(3), atol=1e-12)
        assert np.isclose(np.linalg.det(r), 1.0)


@pytest.mark.parametrize("k", range(3))
def test_half_angle_is_rotation(k):
    axis = np.eye(3)[k]
    for theta in (0.3, np.pi / 2, np.pi, 2.5):
        np.testing.assert_allclose(su2_to_so3(su2_exp(axis, theta)), rotation(axis, theta),
                                   atol=1e-12)


def test_pauli_maps_to_pi_rotation():
    # i sigma_z is a rotation by pi about z: flips x and y
    np.testing.assert_allclose(su2_to_so3(1j * Z), np.diag([-1.0, -1.0, 1.0]), atol=1e-15)


def test_kernel_is_plus_minus_identity(rng):
    u = random_su2(rng)
    np.testing.assert_allclose(su2_to_so3(-u), su2_to_so3(u), atol=1e-14)


def test_so3_to_su2_round_trip(rng):
    for _ in range(50):
        r = su2_to_so3(random_su2(rng))
        u = so3_to_su2(r)
        assert np.isclose(np.linalg.det(u), 1.0)
        np.testing.assert_allclose(su2_to_so3(u), r, atol=1e-12)


@pytest.mark.parametrize("k", range(3))
def test_so3_to_su2_near_pi_rotations(k):
    # the rotation angle near pi is where a naive trace formula loses accuracy
    for angle in (np.pi, np.pi - 1e-9, np.pi - 1e-5):
        axis = np.eye(3)[k] + 0.1 * np.eye(3)[(k + 1) % 3]
        r = rotation(axis, angle)
        np.testing.assert_allclose(su2_to_so3(so3_to_su2(r)), r, atol=1e-12)


def test_so3_to_su2_rejects_reflection():
    with pytest.raises(ShapeError):
        so3_to_su2(np.diag([1.0, 1.0, -1.0]))


def test_conjugation_rotates_interaction_block(rng):
    # (u⊗u) H (u⊗u)^dag has M' = R M R^T
    p = to_pauli(random_hermitian(rng))
    u = random_su2(rng)
    r = su2_to_so3(u)
    uu = np.kron(u, u)
    q = to_pauli(uu @ from_pauli(p) @ uu.conj().T)
    np.testing.assert_allclose(q.m, r @ p.m @ r.T, atol=1e-12)
    np.testing.assert_allclose(q.local_a, r @ p.local_a, atol=1e-12)
    assert all(np.allclose(s @ s, np.eye(2)) for s in SIGMA)
