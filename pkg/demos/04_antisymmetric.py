"""Antisymmetric couplings behave like a single vector.

An antisymmetric interaction matrix is fixed by its axial vector, and local
rotations only turn that vector. Any target vector is reachable; the cost
is the ratio of lengths. Reversing a vector takes one rotation.
"""
import numpy as np

from hlusim import PauliRep, antisym_overhead, compile_simulation, effective_hamiltonian, pauli_vector

a = np.array([[0, 0.4, 0], [-0.4, 0, 0], [0, 0, 0]])
src = PauliRep.interaction(a)
print("axial vector:", pauli_vector(a))

rev = compile_simulation(src, PauliRep.interaction(-a))
print("time reversal overhead:", rev.overhead, "steps:", len(rev.steps))

tgt = np.array([[0, 0, 0.1], [0, 0, -0.3], [-0.1, 0.3, 0]])
print("predicted overhead:", antisym_overhead(pauli_vector(a), pauli_vector(tgt)))
prot = compile_simulation(src, PauliRep.interaction(tgt))
print("compiled overhead:", prot.overhead)
print("effective M matches:", np.allclose(effective_hamiltonian(prot, src).m, tgt))
