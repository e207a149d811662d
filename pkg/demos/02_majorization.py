"""Which symmetric couplings can one interaction simulate, and at what cost?

A target spectrum is reachable with overhead c exactly when it is majorized
by c times the source spectrum. The witness is a convex mixture of
coordinate permutations, which the compiler turns into rotations.
"""
import numpy as np

from hlusim import construct_mixing, majorizes, required_overhead
from hlusim.errors import InfeasibleError

xy = np.array([1.0, 1.0, 0.0])
targets = {
    "Ising (1,0,0)": [1.0, 0.0, 0.0],
    "XY itself": [1.0, 1.0, 0.0],
    "CNOT core (pi/4,pi/2,pi/2)": [np.pi / 4, np.pi / 2, np.pi / 2],
    "Heisenberg (1,1,1)": [1.0, 1.0, 1.0],
}
for name, lam in targets.items():
    c = required_overhead(xy, lam)
    try:
        mix = construct_mixing(xy, lam, c)
    except InfeasibleError:
        print(f"{name:28s} unreachable (trace fixes c = {c:.3f}, and c * source does not majorize it)")
        continue
    print(f"{name:28s} c = {c:.5f}  terms = {len(mix)}  exact: {np.allclose(c * mix.apply(xy), lam)}")

# the mixture for the CNOT core, written out
mix = construct_mixing(xy, [np.pi / 4, np.pi / 2, np.pi / 2], 5 * np.pi / 8)
for w, p in mix:
    print(f"  weight {w:.2f}  permutation {p}")

# majorization is a partial order, not a total one
print("(2,0,0) majorizes (1,1,0):", majorizes([1, 1, 0], [2, 0, 0]))
print("(1,1,0) majorizes (2,0,0):", majorizes([2, 0, 0], [1, 1, 0]))
