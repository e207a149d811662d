"""Discarding what the compiler cannot use.

Averaging over the four conjugations {I, i sigma_x, i sigma_y, i sigma_z},
taken in the eigenframe of the symmetric part, removes local fields and the
antisymmetric part without spending any interaction time.
"""
import numpy as np

from hlusim import PauliRep, apply_mixing, symmetric_projection_mixing

rng = np.random.default_rng(7)
m = rng.normal(size=(3, 3))
h = PauliRep(0.1, rng.normal(size=3), rng.normal(size=3), m)

mixing, projected = symmetric_projection_mixing(h)
out = apply_mixing(h, mixing)
print("local fields after:", np.round(out.local_a, 12), np.round(out.local_b, 12))
print("symmetric part kept:", np.allclose(out.m, (m + m.T) / 2))
print("identity term kept:", np.isclose(out.alpha, h.alpha))
print("idempotent:", apply_mixing(out, mixing).allclose(out, atol=1e-12))
print("weights:", [w for w, _ in mixing])
