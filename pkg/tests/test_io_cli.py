import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hlusim import (PauliRep, canonical_gate, compile_simulation, effective_hamiltonian, hybrid_plan, io,
                    mixing_to_protocol)
from hlusim.cli import main
from hlusim.errors import DocumentError
from hlusim.pauli import random_su2

PI = np.pi


def write(path, doc):
    io.write_document(path, doc)
    return str(path)


@pytest.fixture
def files(tmp_path, xy, heisenberg, cnot):
    return {
        "xy": write(tmp_path / "xy.json", io.hamiltonian_to_doc(xy)),
        "heis": write(tmp_path / "heis.json", io.hamiltonian_to_doc(heisenberg, form="matrix")),
        "ising": write(tmp_path / "ising.json",
                       io.hamiltonian_to_doc(PauliRep.interaction(np.diag([1.0, 0, 0])))),
        "core": write(tmp_path / "core.json", io.hamiltonian_to_doc(
            PauliRep.interaction(np.diag([PI / 4, PI / 2, PI / 2])))),
        "cnot": write(tmp_path / "cnot.json", io.gate_to_doc(cnot)),
        "sym": write(tmp_path / "sym.json", io.gate_to_doc(canonical_gate([PI / 8] * 3))),
    }


@given(st.integers(0, 2 ** 32 - 1), st.integers(1, 5), st.floats(0.01, 10))
@settings(max_examples=40, deadline=None)
def test_protocol_round_trip_is_bit_exact(seed, k, c):
    rng = np.random.default_rng(seed)
    mix = [(w, random_su2(rng)) for w in rng.dirichlet(np.ones(k))]
    prot = mixing_to_protocol(mix, c)
    if rng.random() < 0.5:
        prot = prot.__class__(prot.steps, prot.overhead, (random_su2(rng), random_su2(rng)),
                              (random_su2(rng), random_su2(rng)), rng.normal(size=3))
    back = io.protocol_from_doc(io.loads(io.dumps(io.protocol_to_doc(prot))))
    assert io.protocols_equal(prot, back)


def test_hamiltonian_round_trip(rng):
    p = PauliRep(0.25, rng.normal(size=3), rng.normal(size=3), rng.normal(size=(3, 3)))
    back = io.hamiltonian_from_doc(io.loads(io.dumps(io.hamiltonian_to_doc(p))))
    assert back == p
    via_matrix = io.hamiltonian_from_doc(io.loads(io.dumps(io.hamiltonian_to_doc(p, "matrix"))))
    assert via_matrix.allclose(p, atol=1e-12)


def test_plan_round_trip(xy, cnot):
    plan = hybrid_plan(cnot, xy)
    back = io.plan_from_doc(io.loads(io.dumps(io.plan_to_doc(plan))))
    assert back.shift == plan.shift and back.perm == plan.perm
    assert back.overhead == plan.overhead
    assert io.protocols_equal(back.protocol, plan.protocol)
    assert all(np.array_equal(a, b) for a, b in zip(back.pre_local, plan.pre_local))


def test_schema_violations(xy):
    doc = io.protocol_to_doc(compile_simulation(xy, xy))
    doc["steps"][0]["fraction"] = 0.7
    with pytest.raises(DocumentError) as e:
        io.protocol_from_doc(doc)
    assert e.value.reason == "schema_violation"
    with pytest.raises(DocumentError):
        io.validate({"kind": "hamiltonian", "pauli": {"alpha": 0}})
    with pytest.raises(DocumentError):
        io.validate({"kind": "nonsense"})
    with pytest.raises(DocumentError):
        io.gate_from_doc({"kind": "gate", "matrix": [[[2, 0]] * 4] * 4})
    with pytest.raises(DocumentError) as e:
        io.loads("{not json")
    assert e.value.reason == "parse_error"


def test_simulate_cnot_core(files, tmp_path, capsys):
    out, rep = tmp_path / "p.json", tmp_path / "r.json"
    assert main(["simulate", files["xy"], files["core"], "-o", str(out), "--report", str(rep)]) == 0
    report = json.loads(rep.read_text())
    assert abs(report["overhead"] - 5 * PI / 8) <= 1e-12
    prot = io.protocol_from_doc(json.loads(out.read_text()))
    np.testing.assert_allclose(sorted(prot.fractions), [0.2, 0.2, 0.6], atol=1e-12)
    assert "overhead c = 1.96349" in capsys.readouterr().out


def test_simulate_isotropic_source(files, capsys):
    assert main(["simulate", files["heis"], files["ising"]]) == 2
    assert "isotropic_fixed_point" in capsys.readouterr().err


def test_simulate_self(files, tmp_path):
    rep = tmp_path / "r.json"
    assert main(["simulate", files["xy"], files["xy"], "--report", str(rep)]) == 0
    report = json.loads(rep.read_text())
    assert report["overhead"] == 1.0 and report["n_steps"] == 1
    assert report["distance"] <= 1e-10


def test_synthesize_cnot_hybrid(files, tmp_path):
    rep = tmp_path / "r.json"
    assert main(["synthesize", files["cnot"], files["xy"], "--hybrid", "--report", str(rep)]) == 0
    report = json.loads(rep.read_text())
    assert abs(report["overhead"] - 5 * PI / 8) <= 1e-12
    assert report["shift"] == [0, 1, 1] and report["homogeneous"] is False


def test_synthesize_symmetric_from_isotropic(files, tmp_path):
    rep = tmp_path / "r.json"
    assert main(["synthesize", files["sym"], files["heis"], "--report", str(rep)]) == 0
    assert json.loads(rep.read_text())["overhead"] == pytest.approx(PI / 8, abs=1e-12)


def test_synthesize_cnot_isotropic_without_hybrid(files, capsys):
    assert main(["synthesize", files["cnot"], files["heis"]]) == 2
    assert "error[" in capsys.readouterr().err


def test_verify_protocol_and_plan(files, tmp_path, capsys):
    prot = tmp_path / "p.json"
    plan = tmp_path / "plan.json"
    assert main(["simulate", files["xy"], files["core"], "-o", str(prot)]) == 0
    assert main(["synthesize", files["cnot"], files["xy"], "--hybrid", "-o", str(plan)]) == 0
    rep = tmp_path / "r.json"
    assert main(["verify", str(prot), files["xy"], files["core"], "--slices", "256",
                 "--report", str(rep)]) == 0
    report = json.loads(rep.read_text())
    assert report["sweep"] == [32, 64, 128, 256] and report["distance"] <= 1e-10
    assert main(["verify", str(plan), files["xy"], files["cnot"], "--slices", "64"]) == 0


def test_verify_trivial_protocol(files, tmp_path, xy):
    prot = write(tmp_path / "t.json", io.protocol_to_doc(mixing_to_protocol([(1.0, np.eye(2))], 1.0)))
    rep = tmp_path / "r.json"
    assert main(["verify", prot, files["xy"], files["xy"], "--report", str(rep)]) == 0
    assert json.loads(rep.read_text())["distance"] <= 1e-12


def test_verify_reports_order_for_noncommuting_protocol(tmp_path, rng):
    m = rng.normal(size=(3, 3))
    src = PauliRep.interaction(m + m.T)
    prot = mixing_to_protocol([(0.5, random_su2(rng)), (0.5, random_su2(rng))], 1.0)
    tgt = effective_hamiltonian(prot, src)
    paths = [write(tmp_path / f"{k}.json", d) for k, d in
             (("p", io.protocol_to_doc(prot)), ("s", io.hamiltonian_to_doc(src)),
              ("t", io.hamiltonian_to_doc(tgt)))]
    rep = tmp_path / "r.json"
    assert main(["verify", *paths, "--slices", "2048", "--report", str(rep)]) == 0
    report = json.loads(rep.read_text())
    assert 0.9 <= report["trotter_order"] <= 1.5
    d = report["sweep_distances"]
    assert d[-2] / d[-1] == pytest.approx(2.0, abs=0.3)


def test_verify_corrupted_protocol(files, tmp_path, capsys):
    doc = io.protocol_to_doc(mixing_to_protocol([(0.5, np.eye(2)), (0.5, 1j * np.diag([1, -1]))], 1.0))
    doc["steps"][1]["fraction"] = 0.6
    bad = write(tmp_path / "bad.json", doc)
    assert main(["verify", bad, files["xy"], files["xy"]]) == 1
    assert "schema_violation" in capsys.readouterr().err


def test_input_errors(files, tmp_path, capsys):
    assert main(["simulate", str(tmp_path / "missing.json"), files["xy"]]) == 1
    garbage = tmp_path / "g.json"
    garbage.write_text("[1, 2")
    assert main(["simulate", str(garbage), files["xy"]]) == 1
    assert main(["simulate", files["cnot"], files["xy"]]) == 1
    assert main(["verify", files["xy"], files["xy"], files["xy"], "--slices", "0"]) == 1
    err = capsys.readouterr().err
    assert "io_error" in err and "parse_error" in err


def test_tolerance_flag(files):
    assert main(["--tolerance", "1e-30", "simulate", files["xy"], files["core"]]) == 1
    assert main(["simulate", files["xy"], files["core"], "--tolerance", "1e-6"]) == 0
