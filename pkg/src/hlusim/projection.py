"""Four-term HLU mixings that strip local and antisymmetric parts.

Averaging ``(s⊗s) H (s⊗s)^dag`` over ``s in {I, X, Y, Z}`` keeps only the
diagonal of the interaction block. Conjugating that average by the SU(2)
element that diagonalises ``M_s`` turns it into a projection onto the
symmetric interaction part, at unit time overhead.
"""

import numpy as np

from .errors import ShapeError
from .pauli import I2, SIGMA, PauliRep, from_pauli, so3_to_su2, split_sym_antisym, to_pauli
from .spectral import symm_eigenvalues


def diagonal_projection_mixing():
    # i*sigma_k has unit determinant, and the phase drops out of the conjugation
    return [(0.25, I2.copy())] + [(0.25, 1j * s) for s in SIGMA]


def apply_mixing(p, mixing):
    """``sum_k w_k (v_k⊗v_k) H (v_k⊗v_k)^dag`` computed on the 4x4 operator."""
    weights = np.array([w for w, _ in mixing], dtype=float)
    if np.any(weights < -1e-12) or abs(weights.sum() - 1.0) > 1e-12:
        raise ShapeError("mixing weights must form a probability distribution")
    h = from_pauli(p)
    out = np.zeros((4, 4), dtype=complex)
    for w, v in mixing:
        vv = np.kron(v, v)
        out += w * (vv @ h @ vv.conj().T)
    return to_pauli((out + out.conj().T) / 2)


def symmetric_projection_mixing(p):
    """Mixing that maps ``p`` onto its symmetric interaction part.

    Returns ``(mixing, projected)``; ``projected`` keeps ``alpha`` and the
    symmetric block ``(M + M^T)/2`` and drops the local terms.
    """
    m_s, _ = split_sym_antisym(p)
    _, frame = symm_eigenvalues(m_s)
    u = so3_to_su2(frame)
    mixing = [(w, u.conj().T @ s @ u) for w, s in diagonal_projection_mixing()]
    projected = PauliRep(p.alpha, np.zeros(3), np.zeros(3), m_s)
    return mixing, projected
