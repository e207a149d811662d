"""Majorization machinery for symmetric interactions.

Two symmetric interactions with sorted eigenvalue vectors ``lam`` (source) and
``lam_t`` (target) are HLU-interconvertible at overhead c exactly when
``lam_t`` is majorized by ``c * lam``. This module decides that relation,
computes the overhead, and turns a certificate (a doubly stochastic matrix)
into a finite mixing over permutations and then over rotations.

Permutations are tuples ``p`` of 0-based indices with matrix
``P[i, p[i]] = 1``, so ``(P @ x)[i] == x[p[i]]``.
"""

from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .errors import InfeasibleError, ShapeError
from .pauli import rotation

MAJ_TOL = 1e-9
EXACT_TOL = 1e-12

PERMUTATIONS = tuple(permutations(range(3)))  # lexicographic order
IDENTITY = (0, 1, 2)


def perm_matrix(perm):
    n = len(perm)
    p = np.zeros((n, n))
    p[np.arange(n), perm] = 1.0
    return p


def moved(perm):
    """Number of points a permutation displaces."""
    return sum(1 for i, j in enumerate(perm) if i != j)


def _scale(*vecs):
    return max([1.0] + [float(np.max(np.abs(v))) for v in vecs])


def jacobi_eigh(a, tol=1e-13, max_sweeps=50):
    """Cyclic Jacobi eigensolver for a small real symmetric matrix.

    Returns ``(values, vectors)`` with ``a == vectors @ diag(values) @ vectors.T``.
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    for _ in range(max_sweeps):
        off = np.sqrt(np.sum(np.triu(a, 1) ** 2))
        if off <= tol * max(1.0, np.max(np.abs(a))):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if a[p, q] == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * a[p, q])
                t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta == 0.0:
                    t = 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                rot = np.eye(n)
                rot[p, p] = rot[q, q] = c
                rot[p, q] = s
                rot[q, p] = -s
                a = rot.T @ a @ rot
                a[p, q] = a[q, p] = 0.0
                v = v @ rot
    return np.diag(a).copy(), v


def symm_eigenvalues(m_s):
    """Sorted spectrum and SO(3) frame of a symmetric 3x3 matrix.

    Returns ``(lam, frame)`` with ``lam`` descending and
    ``frame.T @ diag(lam) @ frame == m_s``; the rows of ``frame`` are the
    eigenvectors and ``det(frame) == +1``.
    """
    m_s = np.asarray(m_s, dtype=float)
    if m_s.shape != (3, 3):
        raise ShapeError(f"expected 3x3, got {m_s.shape}")
    if not np.allclose(m_s, m_s.T, rtol=0, atol=1e-10 * _scale(m_s)):
        raise ShapeError("matrix is not symmetric")
    vals, vecs = jacobi_eigh((m_s + m_s.T) / 2)
    order = np.argsort(-vals, kind="stable")
    lam = vals[order]
    frame = vecs[:, order].T
    if np.linalg.det(frame) < 0:
        frame[2] = -frame[2]
    return lam, frame


def majorizes(target, source, tol=MAJ_TOL):
    """True iff ``target`` is majorized by ``source`` (both sorted internally)."""
    t = np.sort(np.asarray(target, dtype=float))[::-1]
    s = np.sort(np.asarray(source, dtype=float))[::-1]
    tol = tol * _scale(t, s)
    if abs(t.sum() - s.sum()) > tol:
        return False
    return bool(np.all(np.cumsum(t)[:-1] <= np.cumsum(s)[:-1] + tol))


def is_isotropic(lam, tol=MAJ_TOL):
    lam = np.asarray(lam, dtype=float)
    return np.ptp(lam) <= tol * _scale(lam)


def required_overhead(lambda_src, lambda_tgt, tol=MAJ_TOL):
    """Time overhead fixed by the trace, or the minimal one if both are traceless.

    Raises InfeasibleError when no non-negative overhead is compatible with
    the traces. Majorization itself is not checked here.
    """
    src = np.sort(np.asarray(lambda_src, dtype=float))[::-1]
    tgt = np.sort(np.asarray(lambda_tgt, dtype=float))[::-1]
    tol = tol * _scale(src, tgt)
    s_sum, t_sum = src.sum(), tgt.sum()
    if abs(s_sum) > tol:
        c = t_sum / s_sum
        if c < -tol:
            raise InfeasibleError(
                f"trace ratio forces a negative overhead ({c:.6g})", reason="trace_sign")
        return max(c, 0.0)
    if abs(t_sum) > tol:
        raise InfeasibleError(
            "traceless source cannot simulate a target with non-zero trace",
            reason="traceless_obstruction")
    c = 0.0
    for s_part, t_part in zip(np.cumsum(src)[:2], np.cumsum(tgt)[:2]):
        if s_part <= tol:
            if t_part > tol:
                raise InfeasibleError("zero source cannot reach a non-zero target",
                                      reason="traceless_obstruction")
            continue
        c = max(c, t_part / s_part)
    return c


@dataclass(frozen=True)
class PermutationMixing:
    """Convex combination ``sum_k weight_k P_k`` of 3x3 permutation matrices."""

    terms: tuple

    def __post_init__(self):
        terms = tuple((float(w), tuple(int(i) for i in p)) for w, p in self.terms)
        object.__setattr__(self, "terms", terms)

    def __iter__(self):
        return iter(self.terms)

    def __len__(self):
        return len(self.terms)

    @property
    def weights(self):
        return np.array([w for w, _ in self.terms])

    def matrix(self):
        return sum(w * perm_matrix(p) for w, p in self.terms)

    def apply(self, vec):
        return self.matrix() @ np.asarray(vec, dtype=float)


def verify_mixing(mixing, lambda_src, lambda_tgt, c, tol=MAJ_TOL):
    """Check weights form a distribution and ``c sum p_k P_k lambda_src == lambda_tgt``."""
    w = mixing.weights
    if np.any(w < -EXACT_TOL) or abs(w.sum() - 1.0) > EXACT_TOL:
        return False
    got = c * mixing.apply(lambda_src)
    return bool(np.allclose(got, lambda_tgt, rtol=0, atol=tol * _scale(lambda_tgt)))


def _t_transforms(x, y, tol):
    """T-transforms taking sorted ``x`` to sorted ``y``, where y is majorized by x.

    Each transform is ``(t, j, k)`` meaning ``t I + (1 - t) Q_jk``; the list is
    in application order. At most ``len(x) - 1`` transforms are produced.
    """
    x = np.array(x, dtype=float)
    out = []
    for _ in range(len(x) - 1):
        diff = x - y
        above = np.nonzero(diff > tol)[0]
        if above.size == 0:
            break
        j = int(above[-1])
        below = [k for k in range(j + 1, len(x)) if diff[k] < -tol]
        if not below:
            break
        k = below[0]
        delta = min(x[j] - y[j], y[k] - x[k])
        t = 1.0 - delta / (x[j] - x[k])
        out.append((t, j, k))
        x[j] -= delta
        x[k] += delta
    return out


def construct_mixing(lambda_src, lambda_tgt, c, tol=MAJ_TOL):
    """Permutation mixing with ``c sum_k p_k P_k lambda_src == lambda_tgt``.

    A chain of at most two T-transforms maps the sorted ``c * lambda_src`` onto
    the sorted target; their product is expanded over permutations and
    conjugated back to the callers' orderings. Terms whose permutations give
    the same image of ``lambda_src`` are merged; the representative kept is
    the permutation with that image moving fewest points (then
    lexicographically smallest).
    """
    src = np.asarray(lambda_src, dtype=float)
    tgt = np.asarray(lambda_tgt, dtype=float)
    x_full = c * src
    if not majorizes(tgt, x_full, tol):
        raise InfeasibleError("target is not majorized by c * source",
                              reason="majorization_violated")
    scale_tol = EXACT_TOL * _scale(x_full, tgt)
    ps = np.argsort(-src, kind="stable")
    pt = np.argsort(-tgt, kind="stable")
    x, y = x_full[ps], tgt[pt]
    # D_sorted as a dict perm -> weight, built by composing transforms
    terms = {IDENTITY: 1.0}
    for t, j, k in _t_transforms(x, y, scale_tol):
        swap = list(range(3))
        swap[j], swap[k] = k, j
        nxt = {}
        for p, w in terms.items():
            nxt[p] = nxt.get(p, 0.0) + t * w
            # (Q P)[i] = P[Q[i]]
            q = tuple(p[swap[i]] for i in range(3))
            nxt[q] = nxt.get(q, 0.0) + (1.0 - t) * w
        terms = nxt
    # original-order matrix D = Pt^T D_sorted Ps, i.e. D[pt[i], ps[p[i]]]
    merged = {}
    for p, w in terms.items():
        if w <= 0.0:
            continue
        full = [0, 0, 0]
        for i in range(3):
            full[pt[i]] = int(ps[p[i]])
        full = tuple(full)
        image = tuple(np.round(src[list(full)] / _scale(src), 12))
        merged.setdefault(image, []).append((w, full))
    result = []
    for image, group in merged.items():
        weight = sum(w for w, _ in group)
        # any permutation with this image acts identically; keep the simplest
        same = [p for p in PERMUTATIONS
                if tuple(np.round(src[list(p)] / _scale(src), 12)) == image]
        rep = min(same, key=lambda p: (moved(p), p))
        result.append((weight, rep))
    result.sort(key=lambda wp: (moved(wp[1]), wp[1]))
    total = sum(w for w, _ in result)
    mixing = PermutationMixing(tuple((w / total, p) for w, p in result))
    if not verify_mixing(mixing, src, tgt, c, tol):
        raise InfeasibleError("constructed mixing failed verification",
                              reason="numerical_failure")
    recon = birkhoff_decompose(mixing.matrix())
    if not np.allclose(recon.matrix(), mixing.matrix(), rtol=0, atol=1e-9):
        raise InfeasibleError("mixing failed Birkhoff reconstruction",
                              reason="numerical_failure")
    return mixing


def is_doubly_stochastic(d, tol=1e-10):
    d = np.asarray(d, dtype=float)
    return (d.shape[0] == d.shape[1]
            and np.all(d >= -EXACT_TOL)
            and np.allclose(d.sum(axis=0), 1.0, rtol=0, atol=tol)
            and np.allclose(d.sum(axis=1), 1.0, rtol=0, atol=tol))


def birkhoff_decompose(d, tol=1e-12):
    """Greedy Birkhoff-von Neumann decomposition of a 3x3 doubly stochastic matrix.

    At each step the smallest positive entry is covered by a permutation whose
    entries are all positive; among those, the one allowing the largest weight
    is taken (lexicographically smallest on ties) and peeled off.
    """
    d = np.asarray(d, dtype=float)
    if d.shape != (3, 3) or not is_doubly_stochastic(d):
        raise ShapeError("matrix is not 3x3 doubly stochastic")
    res = np.clip(d, 0.0, None)
    terms = []
    for _ in range(9):
        pos = res > tol
        if not pos.any():
            break
        masked = np.where(pos, res, np.inf)
        i, j = np.unravel_index(np.argmin(masked), masked.shape)
        best = None
        for p in PERMUTATIONS:
            if p[i] != j:
                continue
            vals = res[np.arange(3), p]
            if np.all(vals > tol) and (best is None or vals.min() > best[0]):
                best = (vals.min(), p)
        if best is None:
            break
        w, p = best
        terms.append((w, p))
        res[np.arange(3), p] -= w
    return PermutationMixing(tuple(terms))


def permutation_to_rotation(perm):
    """Rotation R in SO(3) whose squared entries reproduce the permutation matrix.

    Transpositions map to quarter turns about the untouched axis; the even
    permutations are already rotations.
    """
    perm = tuple(int(i) for i in perm)
    p = perm_matrix(perm)
    if moved(perm) == 2:
        fixed = next(i for i in range(3) if perm[i] == i)
        axis = np.zeros(3)
        axis[fixed] = 1.0
        return rotation(axis, np.pi / 2)
    return p
