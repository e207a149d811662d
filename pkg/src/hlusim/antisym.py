"""Antisymmetric interactions, handled through their axial 3-vector.

An antisymmetric interaction block M corresponds to the vector
``v_i = eps_ijk M_jk``; a rotation acts as ``v(R M R^T) = R v(M)``, so a
mixing of rotations only shrinks the vector. Any target whose vector is at
most ``c |v|`` long is reachable, and two rotations always suffice.
"""

import numpy as np

from .errors import InfeasibleError, ShapeError
from .pauli import rotation

TOL = 1e-10

_LEVI_CIVITA = np.zeros((3, 3, 3))
for _i, _j, _k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
    _LEVI_CIVITA[_i, _j, _k] = 1.0
    _LEVI_CIVITA[_i, _k, _j] = -1.0


def pauli_vector(m_a):
    m_a = np.asarray(m_a, dtype=float)
    if m_a.shape != (3, 3):
        raise ShapeError(f"expected 3x3, got {m_a.shape}")
    scale = max(1.0, float(np.max(np.abs(m_a))))
    if not np.allclose(m_a, -m_a.T, rtol=0, atol=TOL * scale):
        raise ShapeError("matrix is not antisymmetric")
    return np.einsum("ijk,jk->i", _LEVI_CIVITA, m_a)


def vector_to_antisym(v):
    """Inverse of :func:`pauli_vector`."""
    v = np.asarray(v, dtype=float)
    return 0.5 * np.einsum("ijk,i->jk", _LEVI_CIVITA, v)


def antisym_overhead(v_src, v_tgt):
    """Minimal overhead ``|v_tgt| / |v_src|``."""
    ns, nt = np.linalg.norm(v_src), np.linalg.norm(v_tgt)
    if nt == 0.0:
        return 0.0
    if ns <= TOL * max(1.0, nt):
        raise InfeasibleError("zero antisymmetric source cannot reach a non-zero target",
                              reason="zero_source")
    return nt / ns


def _perpendicular(a):
    """Unit vector orthogonal to unit ``a``, from the first basis vector not parallel to it."""
    for e in np.eye(3):
        if abs(e @ a) < 1.0 - 1e-6:
            w = e - (e @ a) * a
            return w / np.linalg.norm(w)
    raise AssertionError("unreachable for a unit vector")


def align(a, b):
    """Rotation taking unit vector ``a`` onto unit vector ``b``."""
    cross = np.cross(a, b)
    s, c = np.linalg.norm(cross), float(a @ b)
    if s <= 1e-12:
        if c > 0:
            return np.eye(3)
        return rotation(_perpendicular(a), np.pi)
    return rotation(cross, np.arctan2(s, c))


def construct_rotation_mixing(v_src, v_tgt, c):
    """Two-rotation mixing with ``c sum_k p_k R_k v_src == v_tgt``.

    Returns a list of ``(weight, R)``. One rotation aligns ``v_src`` with the
    target direction, the other anti-aligns it; when the target is zero the
    source direction is used, giving a half-half cancellation.
    """
    v_src = np.asarray(v_src, dtype=float)
    v_tgt = np.asarray(v_tgt, dtype=float)
    ns, nt = np.linalg.norm(v_src), np.linalg.norm(v_tgt)
    if nt > c * ns * (1 + TOL) + TOL:
        raise InfeasibleError(f"|v_tgt| = {nt:.6g} exceeds c |v_src| = {c * ns:.6g}",
                              reason="norm_bound")
    if nt == 0.0 and (c == 0.0 or ns == 0.0):
        return [(1.0, np.eye(3))]
    a = v_src / ns
    d = v_tgt / nt if nt > 0 else a
    ratio = min(nt / (c * ns), 1.0)
    p = (1.0 + ratio) / 2.0
    r_plus = align(a, d)
    if 1.0 - p <= 1e-12:
        return [(1.0, r_plus)]
    r_minus = align(a, -d)
    mixing = [(p, r_plus), (1.0 - p, r_minus)]
    got = c * sum(w * r @ v_src for w, r in mixing)
    assert np.allclose(got, v_tgt, rtol=0, atol=1e-9 * max(1.0, nt))
    return mixing
