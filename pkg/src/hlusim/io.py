"""JSON documents for Hamiltonians, gates, protocols, plans and reports.

Complex entries are written as ``[re, im]`` pairs and matrices row-major.
Floats go through ``repr`` (the shortest string that parses back to the same
double), so every emitted document re-parses bit-exactly.
"""

import json

import jsonschema
import numpy as np

from .engine import HluProtocol, Step
from .errors import DocumentError, HluError
from .pauli import PauliRep, is_hermitian, is_unitary, to_pauli
from .synthesis import SynthesisPlan

_NUM = {"type": "number"}
_VEC3 = {"type": "array", "items": _NUM, "minItems": 3, "maxItems": 3}
_COMPLEX = {"type": "array", "items": _NUM, "minItems": 2, "maxItems": 2}


def _cmatrix(n):
    row = {"type": "array", "items": _COMPLEX, "minItems": n, "maxItems": n}
    return {"type": "array", "items": row, "minItems": n, "maxItems": n}


_PAIR = {"oneOf": [{"type": "null"},
                   {"type": "array", "items": _cmatrix(2), "minItems": 2, "maxItems": 2}]}

_PAULI = {
    "type": "object",
    "required": ["alpha", "local_a", "local_b", "m"],
    "additionalProperties": False,
    "properties": {
        "alpha": _NUM, "local_a": _VEC3, "local_b": _VEC3,
        "m": {"type": "array", "items": _VEC3, "minItems": 3, "maxItems": 3},
    },
}

_PROTOCOL = {
    "type": "object",
    "required": ["kind", "overhead", "steps"],
    "properties": {
        "kind": {"const": "protocol"},
        "overhead": {"type": "number", "minimum": 0},
        "steps": {"type": "array", "items": {
            "type": "object",
            "required": ["su2", "fraction"],
            "additionalProperties": False,
            "properties": {"su2": _cmatrix(2), "fraction": {"type": "number", "minimum": 0}},
        }},
        "local_pre": _PAIR,
        "local_post": _PAIR,
        "local_field": {"oneOf": [{"type": "null"}, _VEC3]},
    },
}

SCHEMAS = {
    "hamiltonian": {
        "type": "object",
        "required": ["kind"],
        "properties": {"kind": {"const": "hamiltonian"}, "pauli": _PAULI, "matrix": _cmatrix(4)},
        "oneOf": [{"required": ["pauli"]}, {"required": ["matrix"]}],
    },
    "gate": {
        "type": "object",
        "required": ["kind", "matrix"],
        "properties": {"kind": {"const": "gate"}, "matrix": _cmatrix(4)},
    },
    "protocol": _PROTOCOL,
    "plan": {
        "type": "object",
        "required": ["kind", "shift", "perm", "overhead", "protocol", "pre_local", "post_local"],
        "properties": {
            "kind": {"const": "plan"},
            "shift": {"type": "array", "items": {"type": "integer"}, "minItems": 3, "maxItems": 3},
            "perm": {"type": "array", "items": {"type": "integer", "minimum": 0, "maximum": 2},
                     "minItems": 3, "maxItems": 3},
            "overhead": {"type": "number", "minimum": 0},
            "protocol": _PROTOCOL,
            "pre_local": _PAIR,
            "post_local": _PAIR,
            "interleave": _PAIR,
            "canonical": _VEC3,
        },
    },
    "report": {"type": "object", "required": ["kind"], "properties": {"kind": {"const": "report"}}},
}


def _complex_to_json(a):
    a = np.asarray(a, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in a]


def _complex_from_json(rows):
    return np.array([[complex(re, im) for re, im in row] for row in rows], dtype=complex)


def _pair_to_json(pair):
    return None if pair is None else [_complex_to_json(u) for u in pair]


def _pair_from_json(obj):
    return None if obj is None else tuple(_complex_from_json(u) for u in obj)


def validate(doc, kind=None):
    """Schema check; returns the document kind."""
    if not isinstance(doc, dict) or doc.get("kind") not in SCHEMAS:
        raise DocumentError(f"unknown document kind {doc.get('kind') if isinstance(doc, dict) else doc!r}")
    if kind is not None and doc["kind"] != kind:
        raise DocumentError(f"expected a {kind} document, got {doc['kind']}")
    try:
        jsonschema.validate(doc, SCHEMAS[doc["kind"]])
    except jsonschema.ValidationError as err:
        raise DocumentError(f"{doc['kind']} document: {err.message}") from None
    return doc["kind"]


# -- encoders --

def hamiltonian_to_doc(p, form="pauli"):
    if form == "matrix":
        return {"kind": "hamiltonian", "matrix": _complex_to_json(p.matrix())}
    return {"kind": "hamiltonian", "pauli": {
        "alpha": float(p.alpha), "local_a": p.local_a.tolist(), "local_b": p.local_b.tolist(),
        "m": p.m.tolist()}}


def gate_to_doc(u):
    return {"kind": "gate", "matrix": _complex_to_json(u)}


def protocol_to_doc(protocol):
    return {
        "kind": "protocol",
        "overhead": protocol.overhead,
        "steps": [{"su2": _complex_to_json(s.conjugation), "fraction": s.fraction}
                  for s in protocol.steps],
        "local_pre": _pair_to_json(protocol.local_pre),
        "local_post": _pair_to_json(protocol.local_post),
        "local_field": None if protocol.local_field is None else protocol.local_field.tolist(),
    }


def plan_to_doc(plan):
    doc = {
        "kind": "plan",
        "shift": [int(n) for n in plan.shift],
        "perm": [int(i) for i in plan.perm],
        "overhead": plan.overhead,
        "protocol": protocol_to_doc(plan.protocol),
        "pre_local": _pair_to_json(plan.pre_local),
        "post_local": _pair_to_json(plan.post_local),
        "interleave": _pair_to_json(plan.interleave),
    }
    if plan.decomposition is not None:
        doc["canonical"] = [float(x) for x in plan.decomposition.canonical]
    return doc


def report_to_doc(**fields):
    return {"kind": "report", **fields}


# -- decoders --

def hamiltonian_from_doc(doc):
    validate(doc, "hamiltonian")
    if "pauli" in doc:
        p = doc["pauli"]
        return PauliRep(p["alpha"], p["local_a"], p["local_b"], p["m"])
    h = _complex_from_json(doc["matrix"])
    if not is_hermitian(h, atol=1e-10):
        raise DocumentError("hamiltonian matrix is not Hermitian")
    return to_pauli((h + h.conj().T) / 2)


def gate_from_doc(doc):
    validate(doc, "gate")
    u = _complex_from_json(doc["matrix"])
    if not is_unitary(u, atol=1e-9):
        raise DocumentError("gate matrix is not unitary")
    return u


def protocol_from_doc(doc):
    validate(doc, "protocol")
    try:
        return HluProtocol(
            tuple(Step(_complex_from_json(s["su2"]), s["fraction"]) for s in doc["steps"]),
            doc["overhead"],
            local_pre=_pair_from_json(doc.get("local_pre")),
            local_post=_pair_from_json(doc.get("local_post")),
            local_field=doc.get("local_field"),
        )
    except HluError as err:
        raise DocumentError(f"protocol document: {err}") from None


def plan_from_doc(doc):
    validate(doc, "plan")
    protocol = protocol_from_doc(doc["protocol"])
    return SynthesisPlan(tuple(doc["shift"]), tuple(doc["perm"]), doc["overhead"], protocol,
                         _pair_from_json(doc["pre_local"]), _pair_from_json(doc["post_local"]),
                         interleave=_pair_from_json(doc.get("interleave")))


_DECODERS = {"hamiltonian": hamiltonian_from_doc, "gate": gate_from_doc,
             "protocol": protocol_from_doc, "plan": plan_from_doc}


def from_doc(doc):
    """Decode any document into its in-memory value (reports stay dicts)."""
    kind = validate(doc)
    return _DECODERS[kind](doc) if kind in _DECODERS else doc


# -- files --

def dumps(doc):
    return json.dumps(doc, indent=2, allow_nan=False)


def loads(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise DocumentError(f"invalid JSON: {err}", reason="parse_error") from None


def read_document(path, kind=None):
    try:
        with open(path) as fh:
            doc = loads(fh.read())
    except OSError as err:
        raise DocumentError(f"cannot read {path}: {err.strerror}", reason="io_error") from None
    validate(doc, kind)
    return doc


def write_document(path, doc):
    with open(path, "w") as fh:
        fh.write(dumps(doc) + "\n")


def protocols_equal(a, b):
    """Bit-exact equality of two protocols."""
    def same_pair(x, y):
        if x is None or y is None:
            return x is None and y is None
        return all(np.array_equal(u, v) for u, v in zip(x, y))

    return (a.overhead == b.overhead
            and len(a.steps) == len(b.steps)
            and all(s.fraction == t.fraction and np.array_equal(s.conjugation, t.conjugation)
                    for s, t in zip(a.steps, b.steps))
            and same_pair(a.local_pre, b.local_pre)
            and same_pair(a.local_post, b.local_post)
            and ((a.local_field is None and b.local_field is None)
                 or (a.local_field is not None and b.local_field is not None
                     and np.array_equal(a.local_field, b.local_field))))
