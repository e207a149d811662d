"""Hamiltonian simulation and gate synthesis with homogeneous local unitaries."""

from .antisym import antisym_overhead, construct_rotation_mixing, pauli_vector
from .engine import (CouplingGraph, HluProtocol, Step, VerificationReport, compile_simulation,
                     effective_hamiltonian, execute, mixing_to_protocol, multiqubit_lift,
                     phase_distance, verify)
from .errors import (HluError, InfeasibleError, RepresentationError, ShapeError, SymmetryError,
                     UnsupportedError)
from .pauli import PauliRep, from_pauli, so3_to_su2, split_sym_antisym, su2_to_so3, to_pauli
from .projection import apply_mixing, diagonal_projection_mixing, symmetric_projection_mixing
from .spectral import (PermutationMixing, birkhoff_decompose, construct_mixing, majorizes,
                       permutation_to_rotation, required_overhead, symm_eigenvalues)
from .synthesis import (GateDecomposition, SynthesisPlan, canonical_gate, execute_plan,
                        hybrid_plan, kak_decompose, shift_search, synthesize_gate)

__version__ = "0.1.0"
