"""Period map of the octagon family.

The two ratio conditions are complex; on the real-parameter slice they
carry one real dimension each. The circles around (0, 1) and (a, b) pick up
the phase -pi/2 - pi alpha for phi1 (and its mirror for phi2), the circle
around (1, a) the phase -pi/2, so P_1 = exp(-i pi alpha) X_1 and
P_2 = exp(i pi alpha) X_2 with X real. The reduced residual is
r = (Re e^{i pi alpha} P_1, Re e^{-i pi alpha} P_2), which equals the
residue expression at alpha = 0.
"""
from __future__ import annotations

import cmath
import math

import numpy as np

from ..weierstrass import de_forms, lopez_ros_rho
from .contours import circle_period


def de_branch_points(a: float, b: float):
    return (-b, -a, -1.0, 0.0, 1.0, a, b)


def de_circle_periods(a: float, b: float, alpha: float, fraction: float = 0.5,
                      pairs=None):
    """{(i, j): (int phi1, int phi2)} over gamma_{i,j}."""
    phi1, phi2 = de_forms(a, b, alpha)
    pts = de_branch_points(a, b)
    if pairs is None:
        pairs = ((0.0, 1.0), (1.0, a), (a, b))
    return {p: (circle_period(phi1, *p, pts, fraction), circle_period(phi2, *p, pts, fraction))
            for p in pairs}


def de_residual_complex(a: float, b: float, alpha: float, fraction: float = 0.5):
    per = de_circle_periods(a, b, alpha, fraction)
    (p01, q01), (p1a, q1a), (pab, qab) = (per[k] for k in sorted(per, key=lambda k: k[0]))
    r1 = p01 / p1a - (q01 / q1a).conjugate()
    r2 = p1a / pab - (q1a / qab).conjugate()
    return np.array([r1, r2])


def de_residual(a: float, b: float, alpha: float, fraction: float = 0.5) -> np.ndarray:
    """Real-reduced ratio residual (two components)."""
    r = de_residual_complex(a, b, alpha, fraction)
    rot = np.array([cmath.exp(1j * math.pi * alpha), cmath.exp(-1j * math.pi * alpha)])
    return (r * rot).real


def de_residual_imag(a: float, b: float, alpha: float, fraction: float = 0.5) -> np.ndarray:
    """The discarded components; zero up to quadrature error."""
    r = de_residual_complex(a, b, alpha, fraction)
    rot = np.array([cmath.exp(1j * math.pi * alpha), cmath.exp(-1j * math.pi * alpha)])
    return (r * rot).imag


def de_residual_limit(a: float, b: float) -> np.ndarray:
    """Closed form of the residual at alpha = 0 (residue theorem)."""
    a2, b2 = a * a, b * b
    return np.array([1.0 + 2.0 * b2 / ((a2 - 1.0) * (a2 - b2)),
                     -1.0 + (a2 - 1.0) / (b2 - a2)])


def de_residual_limit_residues(a: float, b: float) -> np.ndarray:
    """Same as de_residual_limit, assembled from the residues of the forms."""
    phi1, phi2 = de_forms(a, b, 0.0)
    R1 = {p: phi1.residue(p) for p in (0.0, 1.0, a, b)}
    R2 = {p: phi2.residue(p) for p in (0.0, 1.0, a, b)}
    r1 = (R1[0.0] + R1[1.0]) / (R1[1.0] + R1[a]) - ((R2[0.0] + R2[1.0]) / (R2[1.0] + R2[a])).conjugate()
    r2 = (R1[1.0] + R1[a]) / (R1[a] + R1[b]) - ((R2[1.0] + R2[a]) / (R2[a] + R2[b])).conjugate()
    return np.array([r1, r2]).real


def de_jacobian_limit(a: float, b: float) -> float:
    """Jacobian determinant d(r1, r2)/d(a, b) of the alpha = 0 residual."""
    a2, b2 = a * a, b * b
    return -8.0 * a * b * (b2 + 1.0) / ((a2 - 1.0) * (b2 - a2) ** 3)


def de_jacobian_reference(a: float, b: float) -> float:
    """Reference expression 8ab(b^2+1)/((a^2-1)(b^2-a^2)^3).

    It differs from de_jacobian_limit by the factor -1: (b^2 - a^2)^3 stands where
    the exact derivative has (a^2 - b^2)^3.
    """
    a2, b2 = a * a, b * b
    return 8.0 * a * b * (b2 + 1.0) / ((a2 - 1.0) * (b2 - a2) ** 3)


DE_ROOT = (math.sqrt(3.0 + math.sqrt(6.0)), math.sqrt(5.0 + 2.0 * math.sqrt(6.0)))


def de_rho(a: float, b: float, alpha: float, fraction: float = 0.5) -> float:
    per = de_circle_periods(a, b, alpha, fraction, pairs=((0.0, 1.0),))
    p, q = per[(0.0, 1.0)]
    return lopez_ros_rho(p, q)


def de_period_closure(a: float, b: float, alpha: float, rho: float, fraction: float = 0.5,
                      pairs=None) -> np.ndarray:
    """|rho int phi1 - conj(int phi2 / rho)| over the listed circles."""
    if pairs is None:
        pairs = ((0.0, 1.0), (1.0, a), (a, b))
    per = de_circle_periods(a, b, alpha, fraction, pairs)
    return np.array([abs(rho * p - (q / rho).conjugate()) for p, q in per.values()])
