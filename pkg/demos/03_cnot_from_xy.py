"""Building a CNOT from an always-on XY interaction.

The gate's non-local content is the canonical vector (pi/4, 0, 0). Shifting
it by pi/2 in two coordinates gives a core the XY spectrum can reach with
interaction time 5 pi / 8, the shortest possible.
"""
import numpy as np

from hlusim import PauliRep, compile_simulation, execute, hybrid_plan, kak_decompose, phase_distance
from hlusim.synthesis import execute_plan

CNOT = np.eye(4)[[0, 1, 3, 2]].astype(complex)
xy = PauliRep.interaction(np.diag([1.0, 1.0, 0.0]))

dec = kak_decompose(CNOT)
print("canonical vector:", np.round(dec.canonical, 6))

core = PauliRep.interaction(np.diag([np.pi / 4, np.pi / 2, np.pi / 2]))
prot = compile_simulation(xy, core)
print(f"overhead {prot.overhead:.6f} (5 pi / 8 = {5 * np.pi / 8:.6f})")
for s in prot.steps:
    print(f"  fraction {s.fraction:.2f}")

plan = hybrid_plan(CNOT, xy)
print("shift", plan.shift, "homogeneous layers:", plan.homogeneous)
for n in (64, 1024, 8192):
    print(f"  slices {n:5d}: distance to CNOT {phase_distance(execute_plan(plan, xy, n), CNOT):.2e}")

# the rotated XY copies in this protocol all commute, so slicing costs nothing
print("one slice is already exact:", phase_distance(execute(prot, xy, 1.0, 1),
                                                    execute(prot, xy, 1.0, 4096)) < 1e-10)
