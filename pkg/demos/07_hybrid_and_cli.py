"""Arbitrary gates from an isotropic interaction, and the command line.

A Heisenberg coupling only generates canonical vectors along (1,1,1), so a
CNOT cannot come from a single homogeneous core. Two (pi/8)(1,1,1) cores with
an X on one qubit between them do the job. The same plans are available from
the ``hlusim`` command.
"""
import subprocess
import sys
import tempfile
from pathlib import Path

import numpy as np

from hlusim import PauliRep, canonical_gate, hybrid_plan, phase_distance
from hlusim.errors import InfeasibleError
from hlusim.synthesis import execute_plan, synthesize_gate

CNOT = np.eye(4)[[0, 1, 3, 2]].astype(complex)
heis = PauliRep.interaction(np.eye(3))

try:
    synthesize_gate(canonical_gate([np.pi / 4, 0, 0]), heis)
except InfeasibleError as err:
    print("homogeneous synthesis refused:", err.reason)

plan = hybrid_plan(CNOT, heis)
print("two cores with interleave:", plan.interleave is not None, "overhead:", round(plan.overhead, 6))
print("distance to CNOT:", f"{phase_distance(execute_plan(plan, heis, 256), CNOT):.2e}")

data = Path(__file__).parent / "data"
with tempfile.TemporaryDirectory() as tmp:
    out = Path(tmp) / "cnot_plan.json"
    cmd = [sys.executable, "-m", "hlusim.cli", "synthesize", str(data / "cnot.json"),
           str(data / "xy.json"), "--hybrid", "-o", str(out)]
    print("$ hlusim synthesize data/cnot.json data/xy.json --hybrid -o cnot_plan.json")
    print(subprocess.run(cmd, capture_output=True, text=True).stdout.strip())
    cmd = [sys.executable, "-m", "hlusim.cli", "verify", str(out), str(data / "xy.json"),
           str(data / "cnot.json"), "--slices", "512"]
    print("$ hlusim verify cnot_plan.json data/xy.json data/cnot.json --slices 512")
    print(subprocess.run(cmd, capture_output=True, text=True).stdout.strip())
