"""Torus family: one root seen in two coordinate systems, then continuation.

The alpha = 0, tau = i root is computed twice: on the half-plane model by
bisection of rho^2 psi1 = psi2 on the diagonal, and on the torus through the
theta-function period map. The branch is then followed in tau and in alpha.

    python demos/dks_torus.py
"""
import numpy as np

from dihedral_forge.builder import build_mesh, parallel_planes_dks
from dihedral_forge.periods import (T_map, a0_tilde, a0_torus, continuation, dks_residual,
                                    f1, f2, tau_sweep)

at = a0_tilde()
a0 = a0_torus()
print(f"half-plane root a~0 = {at:.15f}; T maps it to a0 = 1/2 - Re T(a~0) = {a0:.15f}")
print("torus residual at (a0, a0):", np.linalg.norm(dks_residual(a0, a0, 1j, 0.0)))
print(f"f1(a~0) = {f1(at):.6f}, f2(a~0) = {f2(at):.6f}: both nonzero, so the root is regular")
print("T(1/2) =", T_map(0.5))

for r in tau_sweep([0.8, 0.9, 1.0, 1.1, 1.25]):
    p = r.params
    print(f"tau = {p.tau.imag:.2f}i: a {p.a:.10f} c {p.c:.10f} residual {r.residual_norm:.1e}")

branch = continuation("dks", [0, 1 / 40, 1 / 20, 1 / 10])
for r in branch:
    p = r.params
    print(f"alpha {p.alpha:.4f}: a {p.a:.10f} c {p.c:.10f} b {p.b:.10f}")
mesh = build_mesh(branch[-1], 24)
print("angle between the planes through the top and lower-right edges:",
      parallel_planes_dks(mesh))
