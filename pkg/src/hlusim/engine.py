"""Executable HLU protocols: construction, effective Hamiltonians, Trotter execution.

A protocol is a list of ``(v_k, p_k)`` pairs plus an overhead c. Running the
natural Hamiltonian H for a total time ``c t'`` while, inside every short
slice, spending the fraction ``p_k`` of the slice conjugated by ``v_k⊗v_k``
approximates ``exp(-i H' t')`` with

    H' = c sum_k p_k (v_k⊗v_k) H (v_k⊗v_k)^dag  (+ optional equal local field).

The pulses actually applied between free evolutions are ``W_1 = v_1^dag``,
``W_{k+1} = v_{k+1}^dag v_k`` and a closing ``v_n``.
"""

import logging
from dataclasses import dataclass, field, replace
from functools import reduce

import numpy as np

from .antisym import antisym_overhead, construct_rotation_mixing, pauli_vector
from .errors import InfeasibleError, ShapeError, SymmetryError, UnsupportedError
from .pauli import (I2, PAULIS, PauliRep, from_pauli, is_unitary, local_vector_operator,
                    so3_to_su2, split_sym_antisym, su2_to_so3, to_pauli)
from .projection import symmetric_projection_mixing
from .spectral import (construct_mixing, is_isotropic, majorizes, permutation_to_rotation,
                       required_overhead, symm_eigenvalues)

log = logging.getLogger(__name__)

CLASS_TOL = 1e-10
MAX_QUBITS = 10


@dataclass(frozen=True)
class Step:
    conjugation: np.ndarray
    fraction: float


@dataclass(frozen=True)
class HluProtocol:
    """Ordered conjugation schedule with its time overhead.

    ``local_pre``/``local_post`` are optional ``(u_A, u_B)`` one-qubit layers
    applied once before/after the whole evolution. ``local_field`` is an
    optional 3-vector h: each slice ends with ``exp(-i h·sigma dt')`` on both
    qubits, adding ``h⊗I + I⊗h`` to the simulated Hamiltonian.
    """

    steps: tuple
    overhead: float
    local_pre: tuple = None
    local_post: tuple = None
    local_field: np.ndarray = None

    def __post_init__(self):
        steps = tuple(s if isinstance(s, Step) else Step(np.asarray(s[0], dtype=complex),
                                                         float(s[1]))
                      for s in self.steps)
        object.__setattr__(self, "steps", steps)
        object.__setattr__(self, "overhead", float(self.overhead))
        if self.overhead < 0:
            raise ShapeError("overhead must be non-negative")
        fractions = np.array([s.fraction for s in steps])
        if steps:
            if np.any(fractions < 0) or abs(fractions.sum() - 1.0) > 1e-12:
                raise ShapeError(f"step fractions must sum to 1 (got {float(fractions.sum())!r})")
        elif self.overhead != 0.0:
            raise ShapeError("a protocol without steps must have zero overhead")
        for s in steps:
            if s.conjugation.shape != (2, 2) or not is_unitary(s.conjugation):
                raise ShapeError("conjugations must be 2x2 unitaries")
        for name in ("local_pre", "local_post"):
            pair = getattr(self, name)
            if pair is not None:
                pair = tuple(np.asarray(u, dtype=complex) for u in pair)
                if len(pair) != 2 or not all(u.shape == (2, 2) and is_unitary(u) for u in pair):
                    raise ShapeError(f"{name} must be a pair of 2x2 unitaries")
                object.__setattr__(self, name, pair)
        if self.local_field is not None:
            object.__setattr__(self, "local_field",
                               np.asarray(self.local_field, dtype=float).reshape(3))

    @property
    def fractions(self):
        return np.array([s.fraction for s in self.steps])

    @property
    def mixing(self):
        return [(s.fraction, s.conjugation) for s in self.steps]

    @property
    def is_homogeneous(self):
        return all(pair is None or np.allclose(pair[0], pair[1])
                   for pair in (self.local_pre, self.local_post))

    def bare(self):
        """Copy without the one-off local layers."""
        return replace(self, local_pre=None, local_post=None)

    def schedule(self):
        """One slice as ``("pulse", w)`` / ``("evolve", fraction)`` entries, in time order.

        Pulses equal to the identity up to sign are dropped.
        """
        out = []
        prev = I2
        for s in self.steps:
            w = s.conjugation.conj().T @ prev
            if not _is_identity_up_to_sign(w):
                out.append(("pulse", w))
            out.append(("evolve", s.fraction))
            prev = s.conjugation
        if not _is_identity_up_to_sign(prev):
            out.append(("pulse", prev))
        return out


def _is_identity_up_to_sign(w, atol=1e-12):
    return np.allclose(w, I2, rtol=0, atol=atol) or np.allclose(w, -I2, rtol=0, atol=atol)


@dataclass(frozen=True)
class VerificationReport:
    epsilon: float
    n_slices: int
    distance: float
    fidelity: float


def phase_distance(u, v):
    """Frobenius distance ``min_phi |u - e^{i phi} v|``."""
    u, v = np.asarray(u), np.asarray(v)
    overlap = np.vdot(v, u)
    phase = overlap / abs(overlap) if abs(overlap) > 0 else 1.0
    # direct norm; the expanded |u|^2 + |v|^2 - 2|<u,v>| cancels to ~sqrt(eps)
    return float(np.linalg.norm(u - phase * v))


def fidelity(u, v):
    return float(abs(np.vdot(u, v)) / u.shape[0])


def expm_hermitian(h, t):
    """``exp(-i h t)`` for Hermitian h via its eigendecomposition."""
    w, vecs = np.linalg.eigh(h)
    return (vecs * np.exp(-1j * w * t)) @ vecs.conj().T


def mixing_to_protocol(mixing, c):
    """Protocol from ``[(weight, v), ...]``; equal conjugations (up to sign) are merged."""
    weights = np.array([w for w, _ in mixing], dtype=float)
    if weights.size == 0 or np.any(weights < -1e-12) or abs(weights.sum() - 1.0) > 1e-12:
        raise ShapeError("mixing weights must form a probability distribution")
    steps = []
    for w, v in mixing:
        if w <= 0:
            continue
        v = np.asarray(v, dtype=complex)
        for i, (u, f) in enumerate(steps):
            if _is_identity_up_to_sign(u.conj().T @ v):
                steps[i] = (u, f + w)
                break
        else:
            steps.append((v, w))
    total = sum(f for _, f in steps)
    return HluProtocol(tuple(Step(v, f / total) for v, f in steps), c)


def _conjugate(h, v):
    vv = np.kron(v, v)
    return vv @ h @ vv.conj().T


def _field_term(hvec):
    loc = local_vector_operator(hvec)
    return np.kron(loc, I2) + np.kron(I2, loc)


def effective_hamiltonian(protocol, h):
    """Ideal simulated Hamiltonian of ``protocol`` driven by ``h``."""
    hm = from_pauli(h)
    out = np.zeros((4, 4), dtype=complex)
    for s in protocol.steps:
        out += s.fraction * _conjugate(hm, s.conjugation)
    out *= protocol.overhead
    if protocol.local_field is not None:
        out += _field_term(protocol.local_field)
    return to_pauli((out + out.conj().T) / 2)


def _slice_unitary(protocol, hm, eps, dt_sim, n_qubits=2):
    w, vecs = np.linalg.eigh(hm)

    def evolve(tau):
        return (vecs * np.exp(-1j * w * tau)) @ vecs.conj().T

    dim = 2 ** n_qubits
    u = np.eye(dim, dtype=complex)
    for kind, val in protocol.schedule():
        if kind == "pulse":
            u = _tensor_power(val, n_qubits) @ u
        else:
            u = evolve(val * eps) @ u
    if protocol.local_field is not None:
        loc = expm_hermitian(local_vector_operator(protocol.local_field), dt_sim)
        u = _tensor_power(loc, n_qubits) @ u
    return u


def _tensor_power(a, n):
    return reduce(np.kron, [a] * n)


def execute(protocol, h, t_prime=1.0, n_slices=1):
    """Simulated unitary: the sliced product of free evolutions and HLU pulses.

    Every slice lasts ``eps = c t' / n_slices`` of physical interaction time and
    is identical, so the product is a matrix power of the one-slice unitary.
    The one-off local layers wrap the result.
    """
    if n_slices < 1:
        raise ValueError("n_slices must be >= 1")
    hm = from_pauli(h) if isinstance(h, PauliRep) else np.asarray(h, dtype=complex)
    eps = protocol.overhead * t_prime / n_slices
    one = _slice_unitary(protocol, hm, eps, t_prime / n_slices)
    u = np.linalg.matrix_power(one, n_slices)
    if protocol.local_pre is not None:
        u = u @ np.kron(*protocol.local_pre)
    if protocol.local_post is not None:
        u = np.kron(*protocol.local_post) @ u
    return u


def verify(protocol, h, target, t_prime=1.0, n_slices=4096):
    u = execute(protocol, h, t_prime, n_slices)
    return VerificationReport(
        epsilon=protocol.overhead * t_prime / n_slices,
        n_slices=int(n_slices),
        distance=phase_distance(u, target),
        fidelity=fidelity(u, target),
    )


def trotter_order(run, slices):
    """Least-squares slope of ``log distance`` against ``log(1 / n_slices)``.

    ``run`` maps a slice count to a phase-invariant distance.
    """
    slices = np.asarray(slices, dtype=float)
    dist = np.array([run(int(n)) for n in slices])
    slope = np.polyfit(np.log(1.0 / slices), np.log(dist), 1)[0]
    return float(slope), dist


def target_unitary(h_target, t_prime=1.0):
    hm = from_pauli(h_target) if isinstance(h_target, PauliRep) else h_target
    return expm_hermitian(hm, t_prime)


# ---------------------------------------------------------------------------
# compilation


def classify(m, tol=CLASS_TOL):
    """``"zero"``, ``"symmetric"``, ``"antisymmetric"`` or ``"mixed"``."""
    m_s, m_a = split_sym_antisym(m)
    scale = max(1.0, float(np.max(np.abs(m))))
    sym_zero = np.max(np.abs(m_s)) <= tol * scale
    anti_zero = np.max(np.abs(m_a)) <= tol * scale
    if sym_zero and anti_zero:
        return "zero"
    if anti_zero:
        return "symmetric"
    if sym_zero:
        return "antisymmetric"
    return "mixed"


def _equal_locals(p, tol=CLASS_TOL):
    return np.allclose(p.local_a, p.local_b, rtol=0, atol=tol)


def _has_locals(p, tol=CLASS_TOL):
    return np.max(np.abs(np.concatenate([p.local_a, p.local_b]))) > tol


def compose_mixings(outer, inner):
    """Schedule product: every outer slice split into the inner sub-slices.

    Conjugation by ``v q`` applies ``q`` first, so the inner mixing acts on the
    Hamiltonian before the outer one.
    """
    return [(p * q, v @ u) for p, v in outer for q, u in inner]


def symmetric_mixing(m_src, m_tgt, c=None):
    """Rotation mixing for symmetric source and target blocks.

    Returns ``(mixing, c)`` where the mixing is a list of ``(weight, SU(2))``.
    With ``c`` omitted the trace-forced (or minimal traceless) overhead is used.
    """
    lam, frame_src = symm_eigenvalues(m_src)
    lam_t, frame_tgt = symm_eigenvalues(m_tgt)
    if is_isotropic(lam) and not is_isotropic(lam_t):
        raise InfeasibleError(
            "isotropic source is a fixed point of HLU mixing and cannot simulate "
            "a non-isotropic target", reason="isotropic_fixed_point")
    if c is None:
        c = required_overhead(lam, lam_t)
    if not majorizes(lam_t, c * lam):
        raise InfeasibleError(
            f"target spectrum {np.round(lam_t, 6)} is not majorized by c * source "
            f"{np.round(c * lam, 6)}", reason="majorization_violated")
    perms = construct_mixing(lam, lam_t, c)
    mixing = [(w, so3_to_su2(frame_tgt.T @ permutation_to_rotation(p) @ frame_src))
              for w, p in perms]
    return mixing, c


def antisymmetric_mixing(m_src, m_tgt, c=None):
    _, a_src = split_sym_antisym(m_src)
    _, a_tgt = split_sym_antisym(m_tgt)
    v_src, v_tgt = pauli_vector(a_src), pauli_vector(a_tgt)
    if c is None:
        c = antisym_overhead(v_src, v_tgt)
    rots = construct_rotation_mixing(v_src, v_tgt, c)
    return [(w, so3_to_su2(r)) for w, r in rots], c


def _dispatch(h_source, h_target, src_cls, tgt_cls, project, c):
    if src_cls == "zero":
        raise InfeasibleError("source has no interaction part", reason="zero_source")
    if tgt_cls == "symmetric" and src_cls in ("symmetric", "mixed"):
        m_s, _ = split_sym_antisym(h_source.m)
        return symmetric_mixing(m_s, h_target.m, c)
    if tgt_cls == "antisymmetric" and src_cls == "antisymmetric":
        if project:
            raise UnsupportedError("unequal source locals cannot be removed while keeping an "
                                   "antisymmetric interaction", reason="unequal_source_locals")
        return antisymmetric_mixing(h_source.m, h_target.m, c)
    if tgt_cls == "antisymmetric" and src_cls == "mixed":
        raise UnsupportedError("no projection onto the antisymmetric part is available",
                               reason="mixed_source_antisymmetric_target")
    raise SymmetryError(f"a {src_cls} interaction can only simulate a {src_cls} one "
                        f"under HLU, target is {tgt_cls}")


def compile_simulation(h_source, h_target, c=None):
    """Protocol making ``h_source`` plus HLU control simulate ``h_target``.

    Dispatch on the exchange-symmetry class of the interaction blocks:
    symmetric to symmetric by majorization, antisymmetric to antisymmetric by
    the axial-vector bound, and a mixed source to a symmetric target through
    the symmetric projection. Equal local terms of the source are cancelled and
    those of the target added through the protocol's local field; unequal
    source locals are removed by the projection. ``c`` overrides the overhead
    where it is free (traceless or antisymmetric cases).
    """
    if not _equal_locals(h_target):
        raise UnsupportedError("HLU control cannot produce unequal local terms on the target",
                               reason="unequal_target_locals")
    src_cls, tgt_cls = classify(h_source.m), classify(h_target.m)
    log.debug("compile: source %s, target %s", src_cls, tgt_cls)
    project = src_cls == "mixed" or (_has_locals(h_source) and not _equal_locals(h_source))

    if tgt_cls == "mixed":
        raise UnsupportedError("targets with both symmetric and antisymmetric parts are "
                               "not supported", reason="mixed_target")
    if tgt_cls == "zero" and (c is None or c == 0.0 or src_cls == "zero"):
        mixing, c, project = [(1.0, I2.copy())], 0.0, False
    else:
        if tgt_cls == "zero":
            # a zero block belongs to both classes; follow the source
            tgt_cls = "symmetric" if src_cls == "mixed" else src_cls
        mixing, c = _dispatch(h_source, h_target, src_cls, tgt_cls, project, c)

    if project:
        proj, _ = symmetric_projection_mixing(h_source)
        mixing = compose_mixings(mixing, proj)
    protocol = mixing_to_protocol(mixing, c)
    field_vec = np.array(h_target.local_a, dtype=float)
    if not project and _has_locals(h_source):
        # the source's equal local term is rotated by every conjugation
        rots = sum(s.fraction * su2_to_so3(s.conjugation) for s in protocol.steps)
        field_vec = field_vec - c * rots @ h_source.local_a
    if np.max(np.abs(field_vec)) > CLASS_TOL:
        protocol = replace(protocol, local_field=field_vec)
    if c == 0.0:
        protocol = HluProtocol((), 0.0, local_field=protocol.local_field)
    return protocol


# ---------------------------------------------------------------------------
# many qubits


@dataclass(frozen=True)
class CouplingGraph:
    """N qubits coupled pairwise by one shared two-qubit interaction.

    An edge ``(i, j)`` places the interaction with qubit i in the A slot.
    """

    n_qubits: int
    edges: tuple
    interaction: PauliRep = None
    edge_interactions: tuple = field(default=None, repr=False)

    def __post_init__(self):
        if not 2 <= self.n_qubits <= MAX_QUBITS:
            raise ShapeError(f"n_qubits must lie in [2, {MAX_QUBITS}]")
        edges = tuple((int(i), int(j)) for i, j in self.edges)
        for i, j in edges:
            if i == j or not (0 <= i < self.n_qubits and 0 <= j < self.n_qubits):
                raise ShapeError(f"bad edge ({i}, {j})")
        object.__setattr__(self, "edges", edges)
        if self.edge_interactions is not None:
            inter = tuple(self.edge_interactions)
            if len(inter) != len(edges):
                raise ShapeError("one interaction per edge required")
            if any(not p.allclose(inter[0], atol=1e-12) for p in inter):
                raise UnsupportedError("heterogeneous edge interactions are not supported",
                                       reason="heterogeneous_edges")
            object.__setattr__(self, "interaction", inter[0])
        if self.interaction is None:
            raise ShapeError("an interaction is required")


def embed_two_qubit(p, i, j, n):
    """Dense ``2^n`` operator acting as PauliRep ``p`` on qubits (i, j)."""
    coef = np.zeros((4, 4))
    coef[0, 0] = p.alpha
    coef[1:, 0] = p.local_a
    coef[0, 1:] = p.local_b
    coef[1:, 1:] = p.m
    dim = 2 ** n
    out = np.zeros((dim, dim), dtype=complex)
    for a in range(4):
        for b in range(4):
            if coef[a, b] == 0.0:
                continue
            factors = [I2] * n
            factors[i] = PAULIS[a]
            factors[j] = PAULIS[b] if i != j else factors[j]
            out += coef[a, b] * reduce(np.kron, factors)
    return out


def graph_hamiltonian(graph, interaction=None):
    inter = graph.interaction if interaction is None else interaction
    dim = 2 ** graph.n_qubits
    h = np.zeros((dim, dim), dtype=complex)
    for i, j in graph.edges:
        h += embed_two_qubit(inter, i, j, graph.n_qubits)
    return h


@dataclass(frozen=True)
class LiftedSystem:
    graph: CouplingGraph
    protocol: HluProtocol
    hamiltonian: np.ndarray
    effective: np.ndarray
    edge_target: np.ndarray

    def execute(self, t_prime=1.0, n_slices=1):
        n = self.graph.n_qubits
        eps = self.protocol.overhead * t_prime / n_slices
        one = _slice_unitary(self.protocol, self.hamiltonian, eps, t_prime / n_slices, n)
        u = np.linalg.matrix_power(one, n_slices)
        if self.protocol.local_pre is not None:
            u = u @ _tensor_power(self.protocol.local_pre[0], n)
        if self.protocol.local_post is not None:
            u = _tensor_power(self.protocol.local_post[0], n) @ u
        return u

    def target(self, t_prime=1.0):
        return expm_hermitian(self.effective, t_prime)


def multiqubit_lift(graph, protocol, atol=1e-9):
    """Broadcast a two-qubit protocol to ``w^{⊗N}`` pulses on a coupling graph.

    The dense effective Hamiltonian is compared with the sum over edges of
    the two-qubit effective interaction; a mismatch raises.
    """
    if not protocol.is_homogeneous:
        raise UnsupportedError("inhomogeneous local layers cannot be broadcast",
                               reason="inhomogeneous_layers")
    n = graph.n_qubits
    h = graph_hamiltonian(graph)
    eff = np.zeros_like(h)
    for s in protocol.steps:
        vv = _tensor_power(s.conjugation, n)
        eff += s.fraction * (vv @ h @ vv.conj().T)
    eff *= protocol.overhead
    edge_eff = effective_hamiltonian(replace(protocol, local_field=None), graph.interaction)
    edge_target = graph_hamiltonian(graph, edge_eff)
    if np.max(np.abs(eff - edge_target)) > atol:
        raise AssertionError("lifted effective Hamiltonian disagrees with edge-wise result")
    if protocol.local_field is not None:
        loc = local_vector_operator(protocol.local_field)
        for q in range(n):
            factors = [I2] * n
            factors[q] = loc
            eff = eff + reduce(np.kron, factors)
    return LiftedSystem(graph, protocol, h, eff, edge_target)
