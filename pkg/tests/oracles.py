"""Independent reference computations used to check the library."""

from itertools import permutations

import numpy as np
from scipy.linalg import expm
from scipy.optimize import linprog

_P = [np.eye(2), np.array([[0, 1], [1, 0]]), np.array([[0, -1j], [1j, 0]]), np.diag([1, -1])]

# Bell basis with the phase convention that makes local gates real orthogonal
BELL = np.array([[1, 0, 0, 1j], [0, 1j, 1, 0], [0, 1j, -1, 0], [1, 0, 0, -1j]]) / np.sqrt(2)


def pauli_coefficients(h):
    """``c[a, b] = tr((P_a⊗P_b) h) / 4`` by brute force."""
    return np.array([[np.trace(np.kron(_P[a], _P[b]) @ h).real / 4 for b in range(4)]
                     for a in range(4)])


def makhlin(u):
    """Local invariants (G1 complex, G2 real) of a two-qubit gate."""
    u = np.asarray(u, dtype=complex)
    ub = BELL.conj().T @ u @ BELL
    m = ub.T @ ub
    det = np.linalg.det(u)
    tr = np.trace(m)
    return tr ** 2 / (16 * det), (tr ** 2 - np.trace(m @ m)) / (4 * det)


def canonical_from_pauli_expm(lam):
    h = sum(l * np.kron(s, s) for l, s in zip(lam, _P[1:]))
    return expm(-1j * h)


def in_permutohedron(x, y):
    """True iff y is a convex combination of the coordinate permutations of x (LP)."""
    pts = np.array([[x[i] for i in p] for p in permutations(range(len(x)))]).T
    n = pts.shape[1]
    a_eq = np.vstack([pts, np.ones((1, n))])
    b_eq = np.append(y, 1.0)
    res = linprog(np.zeros(n), A_eq=a_eq, b_eq=b_eq, bounds=[(0, None)] * n, method="highs")
    return res.status == 0


def rotation_from_su2(u):
    """R_ji = tr(sigma_j u sigma_i u^dag) / 2, written out entrywise."""
    return np.array([[np.trace(_P[j + 1] @ u @ _P[i + 1] @ u.conj().T).real / 2
                      for i in range(3)] for j in range(3)])
