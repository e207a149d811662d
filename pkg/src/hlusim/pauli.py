"""Pauli representation of two-qubit operators and the SU(2) -> SO(3) map.

Index convention, used everywhere in the package: sigma_1 = X, sigma_2 = Y,
sigma_3 = Z in their standard computational-basis forms, and index 0 is the
identity. Qubit A is the left tensor factor.

A two-qubit Hamiltonian is written as

    H = alpha I⊗I + h_A·sigma ⊗ I + I ⊗ h_B·sigma + sum_ij M_ij sigma_i⊗sigma_j

and a one-qubit unitary u acts on the interaction block through the rotation
R = su2_to_so3(u), defined by u sigma_i u^dag = sum_j R_ji sigma_j.
"""

from dataclasses import dataclass

import numpy as np

from .errors import RepresentationError, ShapeError

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)

PAULIS = (I2, X, Y, Z)
SIGMA = (X, Y, Z)

SWAP = np.array(
    [[1, 0, 0, 0],
     [0, 0, 1, 0],
     [0, 1, 0, 0],
     [0, 0, 0, 1]], dtype=complex)

# sigma_i ⊗ sigma_j for i, j in 0..3
_PP = np.array([[np.kron(a, b) for b in PAULIS] for a in PAULIS])


@dataclass(frozen=True, eq=False)
class PauliRep:
    """Real coefficients of a two-qubit Hermitian operator in the Pauli basis."""

    alpha: float
    local_a: np.ndarray
    local_b: np.ndarray
    m: np.ndarray

    def __post_init__(self):
        la = np.asarray(self.local_a, dtype=float)
        lb = np.asarray(self.local_b, dtype=float)
        m = np.asarray(self.m, dtype=float)
        if la.shape != (3,) or lb.shape != (3,):
            raise ShapeError(f"local fields must be 3-vectors, got {la.shape} and {lb.shape}")
        if m.shape != (3, 3):
            raise ShapeError(f"interaction block must be 3x3, got {m.shape}")
        for arr in (la, lb, m):
            if not np.all(np.isfinite(arr)):
                raise RepresentationError("Pauli coefficients must be finite")
            arr.setflags(write=False)
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "local_a", la)
        object.__setattr__(self, "local_b", lb)
        object.__setattr__(self, "m", m)

    @classmethod
    def interaction(cls, m, local=None):
        """Pure interaction ``sum M_ij sigma_i⊗sigma_j`` plus optional equal locals."""
        loc = np.zeros(3) if local is None else local
        return cls(0.0, loc, loc, m)

    @classmethod
    def zero(cls):
        return cls(0.0, np.zeros(3), np.zeros(3), np.zeros((3, 3)))

    def matrix(self):
        return from_pauli(self)

    def __add__(self, other):
        return PauliRep(self.alpha + other.alpha, self.local_a + other.local_a,
                        self.local_b + other.local_b, self.m + other.m)

    def __mul__(self, s):
        s = float(s)
        return PauliRep(s * self.alpha, s * self.local_a, s * self.local_b, s * self.m)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, PauliRep):
            return NotImplemented
        return (self.alpha == other.alpha and np.array_equal(self.local_a, other.local_a)
                and np.array_equal(self.local_b, other.local_b) and np.array_equal(self.m, other.m))

    __hash__ = None

    def allclose(self, other, atol=1e-12):
        return (abs(self.alpha - other.alpha) <= atol
                and np.allclose(self.local_a, other.local_a, rtol=0, atol=atol)
                and np.allclose(self.local_b, other.local_b, rtol=0, atol=atol)
                and np.allclose(self.m, other.m, rtol=0, atol=atol))


def is_hermitian(h, atol=1e-12):
    h = np.asarray(h)
    return h.shape[0] == h.shape[1] and np.allclose(h, h.conj().T, rtol=0, atol=atol)


def is_unitary(u, atol=1e-10):
    u = np.asarray(u)
    return np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))) <= atol


def to_pauli(h, atol=1e-12):
    """Expand a Hermitian 4x4 matrix in the two-qubit Pauli basis."""
    h = np.asarray(h, dtype=complex)
    if h.shape != (4, 4):
        raise ShapeError(f"expected a 4x4 matrix, got {h.shape}")
    scale = max(1.0, float(np.max(np.abs(h))))
    if not is_hermitian(h, atol=atol * scale):
        raise RepresentationError("operator is not Hermitian")
    # tr(h sigma_i⊗sigma_j) / 4 for every basis element at once
    coef = np.einsum("ijab,ba->ij", _PP, h).real / 4.0
    return PauliRep(coef[0, 0], coef[1:, 0], coef[0, 1:], coef[1:, 1:])


def from_pauli(p):
    coef = np.zeros((4, 4))
    coef[0, 0] = p.alpha
    coef[1:, 0] = p.local_a
    coef[0, 1:] = p.local_b
    coef[1:, 1:] = p.m
    return np.einsum("ij,ijab->ab", coef, _PP)


def split_sym_antisym(p):
    """Return ``(M_s, M_a)`` with M_s = (M + M^T)/2 and M_a = (M - M^T)/2."""
    m = p.m if isinstance(p, PauliRep) else np.asarray(p, dtype=float)
    return (m + m.T) / 2.0, (m - m.T) / 2.0


def swap_conjugate(h):
    return SWAP @ h @ SWAP


def is_exchange_symmetric(u, atol=1e-10):
    """True when ``S u S^dag == u`` for the two-qubit swap S."""
    u = np.asarray(u)
    return np.max(np.abs(swap_conjugate(u) - u)) <= atol


def local_vector_operator(v):
    """``v·sigma`` for a real 3-vector v."""
    return v[0] * X + v[1] * Y + v[2] * Z


def su2_to_so3(u):
    """Rotation R with ``u sigma_i u^dag = sum_j R_ji sigma_j``.

    Each entry is the Hilbert-Schmidt overlap ``tr(sigma_j u sigma_i u^dag) / 2``.
    The map is two-to-one: u and -u give the same R.
    """
    u = np.asarray(u, dtype=complex)
    r = np.empty((3, 3))
    for i, si in enumerate(SIGMA):
        conj = u @ si @ u.conj().T
        for j, sj in enumerate(SIGMA):
            r[j, i] = np.trace(sj @ conj).real / 2.0
    return r


def so3_to_su2(r):
    """One of the two SU(2) preimages of a rotation matrix.

    Returns ``cos(theta/2) I - i sin(theta/2) n·sigma`` for the axis-angle pair
    (n, theta) of r. The quaternion is read off with Shepperd's rule: the
    trace branch for small angles, the symmetric-part diagonal near theta = pi
    where the antisymmetric part vanishes.
    """
    r = np.asarray(r, dtype=float)
    if r.shape != (3, 3):
        raise ShapeError(f"expected a 3x3 rotation, got {r.shape}")
    if not np.allclose(r @ r.T, np.eye(3), atol=1e-9) or np.linalg.det(r) < 0:
        raise ShapeError("matrix is not a proper rotation")
    tr = np.trace(r)
    diag = np.diag(r)
    k = int(np.argmax(diag))
    if tr >= diag[k]:
        w = 0.5 * np.sqrt(max(1.0 + tr, 0.0))
        q = np.array([r[2, 1] - r[1, 2], r[0, 2] - r[2, 0], r[1, 0] - r[0, 1]]) / (4.0 * w)
    else:
        i, j = (k + 1) % 3, (k + 2) % 3
        q = np.empty(3)
        q[k] = 0.5 * np.sqrt(max(1.0 + r[k, k] - r[i, i] - r[j, j], 0.0))
        q[i] = (r[i, k] + r[k, i]) / (4.0 * q[k])
        q[j] = (r[j, k] + r[k, j]) / (4.0 * q[k])
        w = (r[j, i] - r[i, j]) / (4.0 * q[k])
        if w < 0:
            w, q = -w, -q
    norm = np.sqrt(w * w + q @ q)
    w, q = w / norm, q / norm
    return w * I2 - 1j * local_vector_operator(q)


def rotation(axis, angle):
    """Rodrigues rotation by ``angle`` about ``axis`` (normalised internally)."""
    n = np.asarray(axis, dtype=float)
    n = n / np.linalg.norm(n)
    k = np.array([[0, -n[2], n[1]], [n[2], 0, -n[0]], [-n[1], n[0], 0]])
    return np.eye(3) + np.sin(angle) * k + (1 - np.cos(angle)) * (k @ k)


def su2_exp(axis, angle):
    """``exp(-i angle/2 n·sigma)``, the SU(2) element covering ``rotation(axis, angle)``."""
    n = np.asarray(axis, dtype=float)
    n = n / np.linalg.norm(n)
    return np.cos(angle / 2) * I2 - 1j * np.sin(angle / 2) * local_vector_operator(n)


def random_su2(rng):
    """Haar-random SU(2) element from a normalised complex 2-vector."""
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    a, b = v / np.linalg.norm(v)
    return np.array([[a, -np.conj(b)], [b, np.conj(a)]])


def random_hermitian(rng, dim=4):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (a + a.conj().T) / 2


def random_unitary(rng, dim=4):
    """Haar-random unitary via QR with phase correction."""
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(a)
    d = np.diag(r)
    return q * (d / np.abs(d))
