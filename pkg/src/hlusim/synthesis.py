"""Two-qubit gate synthesis under homogeneous local control.

Every two-qubit gate factors as ``(u_A⊗u_B) exp(-i sum_k lam_k sigma_k⊗sigma_k)
(v_A⊗v_B)`` up to phase. Since ``exp(-i pi/2 sigma_k⊗sigma_k)`` is itself an
HLU, the non-local core can be reached by simulating any Hamiltonian
``sum_k (lam_k + pi n_k / 2) sigma_k⊗sigma_k`` for unit time; the cheapest
integer shift n (over all coordinate permutations) gives the interaction cost.
"""

import logging
from dataclasses import dataclass, field, replace
from itertools import product

import numpy as np

from .errors import InfeasibleError, ShapeError, SymmetryError
from .engine import (HluProtocol, compose_mixings, classify, execute, mixing_to_protocol,
                     phase_distance)
from .pauli import (I2, SIGMA, X, is_exchange_symmetric, is_unitary, so3_to_su2,
                    split_sym_antisym, su2_to_so3)
from .projection import symmetric_projection_mixing
from .spectral import (IDENTITY, PERMUTATIONS, construct_mixing, is_isotropic, majorizes,
                       permutation_to_rotation, required_overhead, symm_eigenvalues)

log = logging.getLogger(__name__)

KAK_TOL = 1e-10
DEFAULT_WINDOW = 3
MAX_WINDOW = 12

_SINGLET = np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2)
# singlet followed by the Cartesian triplet i (sigma_k ⊗ I)|singlet>; in this
# basis u⊗v is real orthogonal and u⊗u is 1 ⊕ su2_to_so3(u)
MAGIC = np.column_stack([_SINGLET] + [1j * np.kron(s, I2) @ _SINGLET for s in SIGMA])


def canonical_gate(lam):
    """``exp(-i sum_k lam_k sigma_k⊗sigma_k)``; the three generators commute and square to 1."""
    u = np.eye(4, dtype=complex)
    for lk, s in zip(lam, SIGMA):
        u = u @ (np.cos(lk) * np.eye(4) - 1j * np.sin(lk) * np.kron(s, s))
    return u


@dataclass(frozen=True)
class GateDecomposition:
    u_a: np.ndarray
    u_b: np.ndarray
    v_a: np.ndarray
    v_b: np.ndarray
    canonical: np.ndarray
    global_phase: float
    homogeneous: bool = False

    def matrix(self):
        return (np.exp(1j * self.global_phase) * np.kron(self.u_a, self.u_b)
                @ canonical_gate(self.canonical) @ np.kron(self.v_a, self.v_b))


def _orthogonal_split(v, seed=0, tol=KAK_TOL):
    """Factor a unitary ``v = O1 diag(d) O2`` with O1, O2 real special orthogonal.

    ``v^T v`` is symmetric unitary; its real and imaginary parts commute and are
    diagonalised together through a random real combination, retried until
    both come out diagonal.
    """
    n = v.shape[0]
    m2 = v.T @ v
    rng = np.random.default_rng(seed)
    for _ in range(20):
        a, b = rng.normal(size=2)
        _, vecs = np.linalg.eigh(a * m2.real + b * m2.imag)
        o2 = vecs.T
        d2 = o2 @ m2 @ o2.T
        if np.max(np.abs(d2 - np.diag(np.diag(d2)))) <= tol:
            break
    else:
        raise ArithmeticError("simultaneous diagonalisation did not converge")
    if np.linalg.det(o2) < 0:
        o2[0] = -o2[0]
    d = np.sqrt(np.diag(o2 @ m2 @ o2.T))
    o1 = v @ o2.T / d
    if np.max(np.abs(o1.imag)) > 1e-8:
        raise ArithmeticError("orthogonal factor is not real")
    o1 = o1.real
    if np.linalg.det(o1) < 0:
        o1[:, 0] = -o1[:, 0]
        d = d.copy()
        d[0] = -d[0]
    return o1, d, o2


def _phases_to_canonical(singlet_phase, triplet_phases):
    # singlet -> e^{i(g + L)}, triplet_k -> e^{i(g - L + 2 lam_k)}, L = sum(lam)
    gamma = (singlet_phase + np.sum(triplet_phases)) / 4.0
    return (np.asarray(triplet_phases) + singlet_phase - 2.0 * gamma) / 2.0


def _kron_factor(w):
    """Split ``w ∝ a⊗b`` into SU(2) factors via a rank-one SVD."""
    t = w.reshape(2, 2, 2, 2).transpose(0, 2, 1, 3).reshape(4, 4)
    uu, ss, vh = np.linalg.svd(t)
    a = uu[:, 0].reshape(2, 2) * np.sqrt(ss[0])
    b = vh[0].reshape(2, 2) * np.sqrt(ss[0])
    a = a / np.sqrt(np.linalg.det(a))
    b = b / np.sqrt(np.linalg.det(b))
    return a, b


class _Canonicalizer:
    """Moves a canonical vector into normal form while tracking the local factors."""

    def __init__(self, lam, left, right):
        self.lam = np.array(lam, dtype=float)
        self.left = list(left)    # (a_A, a_B), applied after the core
        self.right = list(right)  # (b_A, b_B), applied before the core

    def shift(self, k, steps):
        # U_lam = U_{lam + steps pi/2 e_k} U_{-steps pi/2 e_k}, the latter ∝ (i s_k)^steps twice
        w = np.linalg.matrix_power(1j * SIGMA[k], steps)
        self.lam[k] += steps * np.pi / 2
        self.right = [w @ b for b in self.right]

    def permute(self, perm):
        r = so3_to_su2(permutation_to_rotation(perm))
        self.lam = self.lam[list(perm)]
        self.left = [a @ r.conj().T for a in self.left]
        self.right = [r @ b for b in self.right]

    def negate_others(self, k):
        # conjugating qubit A by sigma_k flips the signs of the two other coefficients
        u = 1j * SIGMA[k]
        mask = np.ones(3, dtype=bool)
        mask[k] = False
        self.lam[mask] *= -1
        self.left[0] = self.left[0] @ u
        self.right[0] = u.conj().T @ self.right[0]

    def reduce(self, tol=KAK_TOL):
        quarter = np.pi / 4
        for k in range(3):
            steps = 0
            while self.lam[k] + steps * np.pi / 2 > quarter + tol:
                steps -= 1
            while self.lam[k] + steps * np.pi / 2 <= -quarter + tol:
                steps += 1
            if steps:
                self.shift(k, steps)
        perm = tuple(int(i) for i in np.argsort(-np.abs(self.lam), kind="stable"))
        if perm != IDENTITY:
            self.permute(perm)

    def fix_signs(self):
        if self.lam[0] < 0:
            self.negate_others(1)
        if self.lam[1] < 0:
            self.negate_others(0)


def kak_decompose(u, tol=KAK_TOL):
    """Canonical decomposition of a two-qubit unitary.

    Exchange-symmetric gates get equal local factors on both qubits and a
    canonical vector with ``pi/4 >= |l1| >= |l2| >= |l3|``; other gates get
    ``pi/4 >= l1 >= l2 >= |l3|``. The factors are checked by reassembly.
    """
    u = np.asarray(u, dtype=complex)
    if u.shape != (4, 4) or not is_unitary(u, atol=1e-9):
        raise ShapeError("kak_decompose needs a 4x4 unitary")
    v = MAGIC.conj().T @ u @ MAGIC
    symmetric = is_exchange_symmetric(u, atol=tol)
    if symmetric:
        o1, d, o2 = _orthogonal_split(v[1:, 1:])
        lam = _phases_to_canonical(np.angle(v[0, 0]), np.angle(d))
        a = so3_to_su2(o1)
        b = so3_to_su2(o2)
        canon = _Canonicalizer(lam, (a, a), (b, b))
        canon.reduce(tol)
    else:
        o1, d, o2 = _orthogonal_split(v)
        lam = _phases_to_canonical(np.angle(d[0]), np.angle(d[1:]))
        left = _kron_factor(MAGIC @ o1 @ MAGIC.conj().T)
        right = _kron_factor(MAGIC @ o2 @ MAGIC.conj().T)
        canon = _Canonicalizer(lam, left, right)
        canon.reduce(tol)
        canon.fix_signs()
    (ua, ub), (va, vb) = canon.left, canon.right
    core = np.kron(ua, ub) @ canonical_gate(canon.lam) @ np.kron(va, vb)
    phase = float(np.angle(np.vdot(core, u)))
    dec = GateDecomposition(ua, ub, va, vb, canon.lam, phase, symmetric)
    err = phase_distance(dec.matrix(), u)
    if err > 1e-9:
        raise ArithmeticError(f"KAK reassembly failed (distance {err:.3g})")
    return dec


# ---------------------------------------------------------------------------
# time-optimal synthesis


@dataclass(frozen=True)
class ShiftChoice:
    shift: tuple
    perm: tuple
    overhead: float
    target: np.ndarray


def _candidate(lambda_prime, lambda_source, perm, n):
    """Overhead for one grid point, or None when infeasible. Pure; safe to run concurrently."""
    target = np.asarray(lambda_prime)[list(perm)] + np.pi / 2 * np.asarray(n)
    try:
        c = required_overhead(lambda_source, target)
    except InfeasibleError:
        return None
    if not majorizes(target, c * np.asarray(lambda_source)):
        return None
    return ShiftChoice(tuple(int(k) for k in n), tuple(perm), float(c), target)


def _rank(choice):
    return (sum(abs(k) for k in choice.shift), choice.shift, choice.perm)


def _better(a, b, tol=1e-12):
    if b is None:
        return True
    scale = max(1.0, abs(b.overhead))
    if a.overhead < b.overhead - tol * scale:
        return True
    if a.overhead > b.overhead + tol * scale:
        return False
    return _rank(a) < _rank(b)


def _best_in_window(lambda_prime, lambda_source, window):
    best = None
    for perm in PERMUTATIONS:
        for n in product(range(-window, window + 1), repeat=3):
            cand = _candidate(lambda_prime, lambda_source, perm, n)
            if cand is not None and _better(cand, best):
                best = cand
    return best


def _same(a, b):
    if a is None or b is None:
        return a is b
    return a.shift == b.shift and a.perm == b.perm


def shift_search(lambda_prime, lambda_source, window=DEFAULT_WINDOW, max_window=MAX_WINDOW):
    """Cheapest ``perm(lambda') + pi/2 n`` majorized by ``c lambda_source``.

    Searches all coordinate permutations and ``n`` in ``[-window, window]^3``;
    ties in c go to the smaller ``|n|_1``, then lexicographic n and perm. The
    window grows while enlarging it by one still changes the optimum.
    """
    if window < 1:
        raise ValueError("window must be >= 1")
    lam_src = np.asarray(lambda_source, dtype=float)
    best = _best_in_window(lambda_prime, lam_src, window)
    while window < max_window:
        wider = _best_in_window(lambda_prime, lam_src, window + 1)
        if _same(best, wider):
            break
        log.info("shift_search: optimum moved at window %d, widening", window + 1)
        best, window = wider, window + 1
    if best is None:
        if is_isotropic(lam_src):
            reason, why = "isotropic_fixed_point", "source is proportional to (1,1,1)"
        elif abs(lam_src.sum()) <= 1e-9 * max(1.0, np.max(np.abs(lam_src))):
            reason, why = "traceless_obstruction", "source is traceless and no shift zeroes the target trace"
        else:
            reason, why = "no_feasible_shift", "no feasible shift"
        raise InfeasibleError(f"no (perm, n) within window {window}: {why}", reason=reason)
    return best


@dataclass(frozen=True)
class SynthesisPlan:
    """How to build a gate: local layers around HLU-controlled evolution.

    Execution order is ``pre_local``, the protocol run for unit simulated time,
    then ``post_local``. With ``interleave`` set the protocol runs twice with
    that local layer in between. ``overhead`` is the total interaction time.
    """

    shift: tuple
    perm: tuple
    overhead: float
    protocol: HluProtocol
    pre_local: tuple
    post_local: tuple
    interleave: tuple = None
    decomposition: GateDecomposition = field(default=None, repr=False)

    @property
    def homogeneous(self):
        return all(np.allclose(a, b) for a, b in (self.pre_local, self.post_local))

    def full_protocol(self):
        if self.interleave is not None:
            raise ValueError("interleaved plans are not a single protocol")
        return replace(self.protocol, local_pre=self.pre_local, local_post=self.post_local)


def execute_plan(plan, h_source, n_slices=4096):
    core = execute(plan.protocol, h_source, 1.0, n_slices)
    if plan.interleave is not None:
        core = core @ np.kron(*plan.interleave) @ core
    return np.kron(*plan.post_local) @ core @ np.kron(*plan.pre_local)


def _source_frame(h_source):
    """Spectrum and frame of the usable symmetric part, plus the projection if one is needed."""
    cls = classify(h_source.m)
    if cls in ("zero", "antisymmetric"):
        raise InfeasibleError(f"a {cls} interaction has no symmetric part to synthesize with",
                              reason="no_symmetric_part")
    has_locals = np.max(np.abs(np.concatenate([h_source.local_a, h_source.local_b]))) > 1e-10
    proj = None
    if cls == "mixed" or has_locals:
        proj, _ = symmetric_projection_mixing(h_source)
    m_s, _ = split_sym_antisym(h_source.m)
    lam, frame = symm_eigenvalues(m_s)
    return lam, frame, proj


def synthesize_gate(u, h_source, window=DEFAULT_WINDOW):
    """Time-optimal plan for an exchange-symmetric gate with homogeneous locals.

    Sources that are not symmetric, or carry local terms, are first projected
    onto their symmetric interaction part at no time cost.
    """
    u = np.asarray(u, dtype=complex)
    if not is_exchange_symmetric(u, atol=1e-9):
        raise SymmetryError("gate is not exchange-symmetric; use hybrid_plan",
                            reason="asymmetric_gate")
    dec = kak_decompose(u)
    lam_src, frame, proj = _source_frame(h_source)
    choice = shift_search(dec.canonical, lam_src, window)
    c = choice.overhead
    if c == 0.0:
        protocol = HluProtocol((), 0.0)
    else:
        perms = construct_mixing(lam_src, choice.target, c)
        mixing = [(w, so3_to_su2(permutation_to_rotation(p) @ frame)) for w, p in perms]
        if proj is not None:
            mixing = compose_mixings(mixing, proj)
        protocol = mixing_to_protocol(mixing, c)
    r = so3_to_su2(permutation_to_rotation(choice.perm))
    w = I2.copy()
    for k, nk in enumerate(choice.shift):
        w = w @ np.linalg.matrix_power(1j * SIGMA[k], nk)
    pre = w @ r @ dec.v_a
    post = dec.u_a @ r.conj().T
    return SynthesisPlan(choice.shift, choice.perm, c, protocol, (pre, pre), (post, post),
                         decomposition=dec)


def hybrid_plan(u, h_source, window=DEFAULT_WINDOW):
    """Plan for an arbitrary gate using two inhomogeneous local layers.

    The non-local core is synthesized homogeneously and the gate's own local
    factors become the outer layers. For an isotropic source, which reaches
    no core but multiples of (1,1,1), CNOT-class gates are composed from two
    ``(pi/8)(1,1,1)`` cores with ``I⊗X`` between them.
    """
    dec = kak_decompose(u)
    try:
        inner = synthesize_gate(canonical_gate(dec.canonical), h_source, window)
    except InfeasibleError as err:
        lam_src, _, _ = _source_frame(h_source)
        cnot_class = np.allclose(dec.canonical, [np.pi / 4, 0, 0], atol=1e-9)
        if not (is_isotropic(lam_src) and cnot_class):
            raise
        log.info("hybrid_plan: isotropic source, composing two (pi/8)(1,1,1) cores (%s)",
                 err.reason)
        return _isotropic_cnot_plan(dec, h_source, window)
    (p, _), (q, _) = inner.pre_local, inner.post_local
    pre = (p @ dec.v_a, p @ dec.v_b)
    post = (dec.u_a @ q, dec.u_b @ q)
    return replace(inner, pre_local=pre, post_local=post, decomposition=dec)


def _isotropic_cnot_plan(dec, h_source, window):
    inner = synthesize_gate(canonical_gate(np.full(3, np.pi / 8)), h_source, window)
    (p, _), (q, _) = inner.pre_local, inner.post_local
    # U(pi/4,0,0) = U_A (I⊗X) U_A (I⊗X): X on B flips the yy and zz generators
    return SynthesisPlan(
        inner.shift, inner.perm, 2 * inner.overhead, inner.protocol,
        pre_local=(p @ dec.v_a, p @ X @ dec.v_b),
        post_local=(dec.u_a @ q, dec.u_b @ q),
        interleave=(p @ q, p @ X @ q),
        decomposition=dec,
    )
