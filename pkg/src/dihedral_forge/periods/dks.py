"""Period map of the torus family on the quarter parallelogram.

Boundary pieces of the quarter domain 0 <= Re z <= 1/2, 0 <= Im z <= Im(tau)/2:
the top edge u from tau/2 to tau/2 + 1/2 and the right edge r from 1/2 to
1/2 + tau/2. The first residual component is Re of int_u dh (dh is real on the
top edge up to rounding). The second is the horizontal mismatch
D = int_r G dh - conj int_r dh/G, whose surviving real dimension after undoing
the wedge phase is Im(exp(i pi alpha) D): the plane through u and the right
half of the bottom edge makes the angle -pi alpha with the one through the
left half.
"""
from __future__ import annotations

import cmath
import math

import numpy as np

from ..quadrature import integrate_segment
from ..theta import TorusModulus
from ..weierstrass import dks_forms

DKS_TOL = 1e-13


def _modulus(tau) -> TorusModulus:
    if isinstance(tau, TorusModulus):
        return tau
    tau = complex(tau)
    if tau.real == 0 and tau.imag == 0:
        raise ValueError("tau must be nonzero")
    return TorusModulus(tau)


def dks_periods(a: float, c: float, tau=1j, alpha: float = 0.0, tol: float = DKS_TOL):
    """(int_u dh, D) as complex numbers."""
    mod = _modulus(tau)
    gdh, inv, dh, _ = dks_forms(a, c, mod, alpha)
    h = mod.tau / 2
    p_u = integrate_segment(dh, h, h + 0.5, tol=tol).value
    g = integrate_segment(gdh, 0.5, 0.5 + h, tol=tol).value
    q = integrate_segment(inv, 0.5, 0.5 + h, tol=tol).value
    return complex(p_u), complex(g - np.conj(q))


def dks_residual(a: float, c: float, tau=1j, alpha: float = 0.0, tol: float = DKS_TOL) -> np.ndarray:
    p_u, d = dks_periods(a, c, tau, alpha, tol)
    return np.array([p_u.real, (cmath.exp(1j * math.pi * alpha) * d).imag])


def dks_residual_complex(a: float, c: float, tau=1j, alpha: float = 0.0,
                         tol: float = DKS_TOL) -> np.ndarray:
    """Unreduced values (int_u dh, exp(i pi alpha) D).

    Im int_u dh vanishes by the reflection symmetry of dh. Re of the rotated D
    is the horizontal translation between consecutive copies and is not a
    closing condition; it stays nonzero at solutions.
    """
    p_u, d = dks_periods(a, c, tau, alpha, tol)
    return np.array([p_u, cmath.exp(1j * math.pi * alpha) * d])
