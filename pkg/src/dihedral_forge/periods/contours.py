"""Circles gamma_{i,j} around two consecutive branch points.

gamma_{i,j} is centred at (i + j)/2 on the real axis, starts on the real
axis to the right of j and runs once counterclockwise. Its radius must
exceed (j - i)/2 and stay below the distance from the centre to the
neighbouring branch points; within that window the integrals do not depend
on the radius, which the tests exercise.
"""
from __future__ import annotations

import math

from ..quadrature import integrate_arc

CIRCLE_TOL = 1e-13


def circle_window(i: float, j: float, branch_points):
    pts = sorted(branch_points)
    if i not in pts or j not in pts or pts.index(j) != pts.index(i) + 1:
        raise ValueError(f"{i}, {j} are not consecutive branch points of {pts}")
    k = pts.index(i)
    i_p = pts[k - 1] if k > 0 else -math.inf
    j_s = pts[k + 2] if k + 2 < len(pts) else math.inf
    m = 0.5 * (i + j)
    lo = 0.5 * (j - i)
    hi = min(j_s - m, m - i_p)
    if not math.isfinite(hi):
        hi = 3.0 * lo
    return m, lo, hi


def circle(i: float, j: float, branch_points, fraction: float = 0.5):
    """(centre, radius) with radius at ``fraction`` of the admissible window."""
    if not 0.0 < fraction < 1.0:
        raise ValueError("fraction must lie in (0, 1)")
    m, lo, hi = circle_window(i, j, branch_points)
    return m, lo + fraction * (hi - lo)


def circle_period(form, i: float, j: float, branch_points, fraction: float = 0.5,
                  tol: float = CIRCLE_TOL) -> complex:
    """Integral of a half-plane form over gamma_{i,j}, branch continued from its start."""
    m, r = circle(i, j, branch_points, fraction)
    f = form.arc_integrand(m, r, 0.0)
    return complex(integrate_arc(f, m, r, 0.0, 2 * math.pi, tol=tol, with_angle=True).value)
