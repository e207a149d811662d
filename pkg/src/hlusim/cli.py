"""Command-line front end.

    hlusim simulate SOURCE TARGET [-o PROTOCOL] [--report REPORT]
    hlusim synthesize GATE SOURCE [--hybrid] [--window N] [-o PLAN] [--report REPORT]
    hlusim verify PROTOCOL SOURCE TARGET [--slices N]

Documents are JSON files (see ``hlusim.io``); a human summary goes to stdout.
Exit status: 0 success, 1 input error, 2 infeasible. Failures print
``error[<reason>]: <message>`` on stderr.
"""

import argparse
import sys

import numpy as np

from . import io
from .engine import (compile_simulation, effective_hamiltonian, execute, expm_hermitian,
                     phase_distance, target_unitary, trotter_order, verify)
from .errors import DocumentError, HluError, InfeasibleError, UnsupportedError
from .pauli import from_pauli
from .synthesis import DEFAULT_WINDOW, execute_plan, hybrid_plan, synthesize_gate

EXIT_OK, EXIT_INPUT, EXIT_INFEASIBLE = 0, 1, 2

# below this every distance is round-off and a fitted order means nothing
_ROUNDOFF = 1e-10


def _emit(path, doc):
    if path:
        io.write_document(path, doc)


def _ideal_core(protocol, h_source):
    if not protocol.steps:
        return np.eye(4, dtype=complex)
    return expm_hermitian(from_pauli(effective_hamiltonian(protocol, h_source)), 1.0)


def _ideal_plan_unitary(plan, h_source):
    core = _ideal_core(plan.protocol, h_source)
    if plan.interleave is not None:
        core = core @ np.kron(*plan.interleave) @ core
    return np.kron(*plan.post_local) @ core @ np.kron(*plan.pre_local)


def _sweep(run, slices):
    counts = [max(1, slices // 8), max(1, slices // 4), max(1, slices // 2), slices]
    counts = sorted(set(counts))
    if len(counts) < 2:
        return None, [run(counts[0])], counts
    order, dist = trotter_order(run, counts)
    if np.max(dist) < _ROUNDOFF:
        order = None
    return order, dist.tolist(), counts


def _check(effective_error, tolerance):
    if effective_error > tolerance:
        raise HluError(f"ideal evolution misses the target by {effective_error:.3g} "
                       f"(tolerance {tolerance:g})", reason="verification_failed")


def cmd_simulate(args):
    source = io.hamiltonian_from_doc(io.read_document(args.source, "hamiltonian"))
    target = io.hamiltonian_from_doc(io.read_document(args.target, "hamiltonian"))
    protocol = compile_simulation(source, target)
    effective_error = float(np.max(np.abs(
        from_pauli(effective_hamiltonian(protocol, source)) - from_pauli(target))))
    rep = verify(protocol, source, target_unitary(target), 1.0, args.slices)
    _check(effective_error, args.tolerance)
    _emit(args.output, io.protocol_to_doc(protocol))
    _emit(args.report, io.report_to_doc(
        command="simulate", overhead=protocol.overhead, n_steps=len(protocol.steps),
        n_slices=rep.n_slices, distance=rep.distance, fidelity=rep.fidelity,
        effective_error=effective_error))
    print(f"feasible: overhead c = {protocol.overhead!r}")
    for s in protocol.steps:
        print(f"  fraction {s.fraction:.6g}")
    print(f"distance at {rep.n_slices} slices: {rep.distance:.3e} "
          f"(ideal error {effective_error:.1e})")
    return EXIT_OK


def cmd_synthesize(args):
    gate = io.gate_from_doc(io.read_document(args.gate, "gate"))
    source = io.hamiltonian_from_doc(io.read_document(args.source, "hamiltonian"))
    build = hybrid_plan if args.hybrid else synthesize_gate
    plan = build(gate, source, window=args.window)
    effective_error = phase_distance(_ideal_plan_unitary(plan, source), gate)
    distance = phase_distance(execute_plan(plan, source, args.slices), gate)
    _check(effective_error, args.tolerance)
    _emit(args.output, io.plan_to_doc(plan))
    _emit(args.report, io.report_to_doc(
        command="synthesize", overhead=plan.overhead, shift=list(plan.shift),
        perm=list(plan.perm), homogeneous=bool(plan.homogeneous), n_slices=args.slices,
        distance=distance, effective_error=effective_error))
    print(f"overhead c = {plan.overhead!r}  (c / pi = {plan.overhead / np.pi:.6g})")
    print(f"shift n = {tuple(plan.shift)}, perm = {tuple(plan.perm)}, "
          f"{'homogeneous' if plan.homogeneous else 'inhomogeneous'} outer layers")
    print(f"distance at {args.slices} slices: {distance:.3e} (ideal error {effective_error:.1e})")
    return EXIT_OK


def cmd_verify(args):
    doc = io.read_document(args.protocol)
    source = io.hamiltonian_from_doc(io.read_document(args.source, "hamiltonian"))
    tdoc = io.read_document(args.target)
    if tdoc["kind"] == "gate":
        target = io.gate_from_doc(tdoc)
    elif tdoc["kind"] == "hamiltonian":
        target = target_unitary(io.hamiltonian_from_doc(tdoc))
    else:
        raise DocumentError("target must be a hamiltonian or gate document")
    if doc["kind"] == "plan":
        plan = io.plan_from_doc(doc)

        def run(n):
            return phase_distance(execute_plan(plan, source, n), target)
    elif doc["kind"] == "protocol":
        protocol = io.protocol_from_doc(doc)

        def run(n):
            return phase_distance(execute(protocol, source, 1.0, n), target)
    else:
        raise DocumentError("first argument must be a protocol or plan document")
    order, dists, counts = _sweep(run, args.slices)
    distance = dists[-1]
    _emit(args.report, io.report_to_doc(
        command="verify", n_slices=args.slices, distance=distance,
        fidelity=1.0 - distance ** 2 / 8.0, sweep=counts, sweep_distances=dists,
        trotter_order=order))
    print(f"distance at {args.slices} slices: {distance:.3e}")
    print(f"fidelity: {1.0 - distance ** 2 / 8.0:.12f}")
    for n, d in zip(counts, dists):
        print(f"  {n:>7} slices: {d:.3e}")
    print("measured order: " + ("n/a (round-off level)" if order is None else f"{order:.3f}"))
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="hlusim", description=__doc__.splitlines()[0])
    parser.add_argument("--tolerance", type=float, default=1e-9,
                        help="bound on the slice-free (ideal) error of emitted protocols")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, slices=4096):
        p.add_argument("--slices", type=int, default=slices)
        p.add_argument("--report", help="write the report document here")
        p.add_argument("--tolerance", type=float, default=argparse.SUPPRESS)

    p = sub.add_parser("simulate", help="compile a Hamiltonian simulation protocol")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("-o", "--output", help="write the protocol document here")
    common(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("synthesize", help="plan a gate from a source interaction")
    p.add_argument("gate")
    p.add_argument("source")
    p.add_argument("--hybrid", action="store_true",
                   help="allow different local layers on the two qubits")
    p.add_argument("--window", type=int, default=DEFAULT_WINDOW)
    p.add_argument("-o", "--output", help="write the plan document here")
    common(p)
    p.set_defaults(func=cmd_synthesize)

    p = sub.add_parser("verify", help="execute a protocol or plan and measure its error")
    p.add_argument("protocol")
    p.add_argument("source")
    p.add_argument("target")
    common(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.slices < 1:
        print("error[input_error]: --slices must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except (InfeasibleError, UnsupportedError) as err:
        print(f"error[{err.reason}]: {err}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except HluError as err:
        print(f"error[{err.reason}]: {err}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
