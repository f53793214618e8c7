"""Period map of the hexagon family.

The conditions are int G dh = conj(int dh/G) on gamma_{1,a} and gamma_{a,c}.
At alpha = 0 each difference equals -2 pi i times the bracketed residue sum
B_k, so the residual is normalized as D_k / (-2 pi i). For alpha > 0 the
normalized difference on gamma_{1,a} stays real, while the one on gamma_{a,c}
picks up the phase exp(i pi alpha); the reduced residual undoes that phase and
keeps the real part.
"""
from __future__ import annotations

import cmath
import math

import numpy as np

from ..weierstrass import dccw_forms
from .contours import circle_period


def dccw_branch_points(a: float, c: float):
    return (-c, -a, -1.0, 1.0, a, c)


def dccw_differences(a: float, b: float, c: float, alpha: float, fraction: float = 0.5):
    """Complex D_k = int_gamma G dh - conj int_gamma dh/G for gamma_{1,a}, gamma_{a,c}."""
    phi1, phi2, _ = dccw_forms(a, b, c, alpha)
    pts = dccw_branch_points(a, c)
    out = []
    for i, j in ((1.0, a), (a, c)):
        p = circle_period(phi1, i, j, pts, fraction)
        q = circle_period(phi2, i, j, pts, fraction)
        out.append(p - q.conjugate())
    return np.array(out)


def _rotations(alpha: float):
    return np.array([1.0, cmath.exp(-1j * math.pi * alpha)])


def dccw_residual(a: float, b: float, c: float, alpha: float, fraction: float = 0.5) -> np.ndarray:
    d = dccw_differences(a, b, c, alpha, fraction) / (-2j * math.pi)
    return (d * _rotations(alpha)).real


def dccw_residual_imag(a: float, b: float, c: float, alpha: float, fraction: float = 0.5) -> np.ndarray:
    d = dccw_differences(a, b, c, alpha, fraction) / (-2j * math.pi)
    return (d * _rotations(alpha)).imag


def dccw_residual_limit(a: float, b: float, c: float) -> np.ndarray:
    """Residue brackets B_1, B_2 at alpha = 0."""
    t1 = (a + b) ** 2 * (1 - a) / ((a + 1) * (c * c - a * a) * (2 * a))
    t2 = 2 * (b - 1) ** 2 / ((c * c - 1) * (a * a - 1))
    t3 = (b - a) ** 2 * (a + 1) / ((1 - a) * (c * c - a * a) * (2 * a))
    u2 = (c + b) ** 2 * (1 - c) / ((c + 1) * (2 * c) * (a * a - c * c))
    u4 = (b - c) ** 2 * (c + 1) / ((1 - c) * (2 * c) * (a * a - c * c))
    return np.array([t1 + t2 + t3, t1 + u2 + t3 + u4])


def dccw_residual_limit_residues(a: float, b: float, c: float) -> np.ndarray:
    """The brackets assembled from residues of the alpha = 0 forms.

    Reproduces dccw_residual_limit: the first bracket is
    Res(G dh, 1) + Res(G dh, a) + conj Res(dh/G, 1) + conj Res(dh/G, a) up to the
    overall sign, i.e. the circle difference divided by -2 pi i.
    """
    phi1, phi2, _ = dccw_forms(a, b, c, 0.0)
    out = []
    for pts in ((1.0, a), (a, c)):
        s = sum(phi1.residue(p) + phi2.residue(p).conjugate() for p in pts)
        out.append(-s)
    return np.array(out).real


DCCW_ROOT = (-3 * math.sqrt(2) + 3 * math.sqrt(3) + 2 * math.sqrt(6) - 4, 2 * math.sqrt(2) + 3)


def constrained_c(a: float, b: float) -> float:
    """c = b^2 / a: equal growth rates at a and c."""
    return b * b / a


def dccw_jacobian_limit_det(a: float, b: float, h: float = 1e-6) -> float:
    """det d(B_1, B_2)/d(a, b) with c = b^2/a, by central differences."""
    def F(x, y):
        return dccw_residual_limit(x, y, constrained_c(x, y))
    ja = (F(a + h, b) - F(a - h, b)) / (2 * h)
    jb = (F(a, b + h) - F(a, b - h)) / (2 * h)
    return float(ja[0] * jb[1] - ja[1] * jb[0])
