"""Two-qubit Hamiltonians as Pauli coefficients, and how local unitaries act on them.

Conjugating by ``u⊗u`` rotates both local field vectors and the interaction
matrix by the same SO(3) rotation. This is the only freedom a homogeneous
controller has, and everything else in the package builds on it.
"""
import numpy as np

from hlusim import PauliRep, from_pauli, so3_to_su2, su2_to_so3, to_pauli
from hlusim.pauli import random_su2

rng = np.random.default_rng(1)

# XY coupling with a small field on qubit A
h = PauliRep(0.0, [0, 0, 0.3], [0, 0, 0], np.diag([1.0, 1.0, 0.0]))
mat = from_pauli(h)
print("4x4 Hermitian:", np.allclose(mat, mat.conj().T))
print("round trip exact:", to_pauli(mat).allclose(h, atol=1e-14))

u = random_su2(rng)
r = su2_to_so3(u)
print("R is a proper rotation:", np.allclose(r @ r.T, np.eye(3)), round(np.linalg.det(r), 12))

conj = to_pauli(np.kron(u, u) @ mat @ np.kron(u, u).conj().T)
print("M -> R M R^T:", np.allclose(conj.m, r @ h.m @ r.T))
print("h_A -> R h_A:", np.allclose(conj.local_a, r @ h.local_a))

# the lift back to SU(2) is only defined up to sign
back = so3_to_su2(r)
print("lift recovers +-u:", np.allclose(back, u) or np.allclose(back, -u))
