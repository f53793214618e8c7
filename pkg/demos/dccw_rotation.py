"""Hexagon family: the order-3 symmetry of the alpha = 0 slab surface.

At alpha = 0 the Moebius map fixing the upper half-plane with 1 -> c,
a -> -c, c -> -a induces a rotation of the surface by 2 pi / 3. The script
finds it from sampled surface points and then follows the branch in alpha.

    python demos/dccw_rotation.py
"""
import math

import numpy as np

from dihedral_forge.builder import data_for_record, verify_mobius_rotation
from dihedral_forge.periods import continuation, solve_family

rec = solve_family("dccw", 0.0)
p = rec.params
print(f"alpha = 0: a = {p.a:.12f}, b = {p.b:.12f}, c = b^2/a = {p.c:.12f}")
print("growth rates at a and c:", rec.derived["growth_a"], rec.derived["growth_c"])

samples = [0.3 + 0.4j, 1.5 + 0.2j, -2 + 1j, 0.1 + 3j, 4 + 2j, -7 + 0.5j]
rep = verify_mobius_rotation(data_for_record(rec), samples)
print(f"rigid fit residual {rep.fit_residual:.1e}, rotation angle / (2 pi / 3)"
      f" = {rep.rotation_angle / (2 * math.pi / 3):.12f}, axis {np.round(rep.axis, 12)}")

rec_a = solve_family("dccw", 0.1)
rep_a = verify_mobius_rotation(data_for_record(rec_a), samples)
print(f"alpha = 0.1: rigid fit residual {rep_a.fit_residual:.1e} (no such symmetry)")

for r in continuation("dccw", [0, 1 / 50, 1 / 20, 1 / 10, 1 / 8, 1 / 6]):
    q = r.params
    print(f"alpha {q.alpha:.4f}: a {q.a:.10f} b {q.b:.10f} residual {r.residual_norm:.1e}")
