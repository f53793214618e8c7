"""Complex line, arc and half-line quadrature with algebraic endpoint weights.

Integrands are vectorized callables taking a complex ndarray. Singular
endpoint behaviour |z - a|**exp_a |z - b|**exp_b is supplied through the
``exp_*`` arguments and absorbed into Gauss-Jacobi rules; it must *not* be
included in ``f``.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.special import roots_jacobi, roots_legendre

DEFAULT_TOL = 1e-10
DEFAULT_BUDGET = 10**6

_LOW, _HIGH = 12, 24


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    error_estimate: float
    evaluations: int


class QuadratureError(RuntimeError):
    """Raised when the evaluation budget runs out; carries the partial result."""

    def __init__(self, message: str, partial: QuadratureResult):
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class PathSegment:
    """A piece of an integration contour.

    ``kind`` is 'line', 'arc' or 'halfline'. Arcs carry a signed angular range
    (theta_end - theta_start > 0 is counterclockwise). ``exp_start``/``exp_end``
    are endpoint singularity exponents for lines and half-lines.
    """

    kind: str
    start: complex = 0j
    end: complex = 0j
    center: complex = 0j
    radius: float = 0.0
    theta_start: float = 0.0
    theta_end: float = 0.0
    exp_start: float = 0.0
    exp_end: float = 0.0

    def __post_init__(self):
        if self.kind not in ("line", "arc", "halfline"):
            raise ValueError(f"unknown segment kind {self.kind!r}")
        if self.exp_start <= -1 or self.exp_end <= -1:
            raise ValueError("singular exponents must exceed -1")

    @classmethod
    def line(cls, start, end, exp_start=0.0, exp_end=0.0):
        return cls("line", start=complex(start), end=complex(end),
                   exp_start=exp_start, exp_end=exp_end)

    @classmethod
    def arc(cls, center, radius, theta_start, theta_end):
        return cls("arc", center=complex(center), radius=float(radius),
                   theta_start=float(theta_start), theta_end=float(theta_end))

    @classmethod
    def halfline(cls, start, exp_start=0.0):
        return cls("halfline", start=complex(start), exp_start=exp_start)

    @property
    def start_point(self) -> complex:
        if self.kind == "arc":
            return self.center + self.radius * np.exp(1j * self.theta_start)
        return self.start

    @property
    def end_point(self) -> complex:
        if self.kind == "arc":
            return self.center + self.radius * np.exp(1j * self.theta_end)
        if self.kind == "halfline":
            return complex(np.inf)
        return self.end

    def reversed(self) -> "PathSegment":
        if self.kind == "arc":
            return PathSegment.arc(self.center, self.radius, self.theta_end, self.theta_start)
        if self.kind == "halfline":
            raise ValueError("a half-line cannot be reversed")
        return PathSegment.line(self.end, self.start, self.exp_end, self.exp_start)


@lru_cache(maxsize=256)
def _rule(n: int, alpha: float, beta: float):
    # weight (1 - x)**alpha (1 + x)**beta on [-1, 1]
    if alpha == 0.0 and beta == 0.0:
        x, w = roots_legendre(n)
    else:
        with np.errstate(invalid="ignore", divide="ignore"):
            x, w = roots_jacobi(n, alpha, beta)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def _scale_rows(v, w):
    v = np.asarray(v)
    return v * w if v.ndim == 1 else v * w[:, None]


def _panel(g, t0, t1, left_exp, right_exp, n):
    """Integrate g over [t0, t1] against (s)**left_exp (1 - s)**right_exp in the
    panel-local coordinate s in [0, 1]; returns the integral in t."""
    x, w = _rule(n, right_exp, left_exp)
    h = t1 - t0
    s = 0.5 * (1.0 + x)
    scale = h * 2.0 ** (-1.0 - left_exp - right_exp)
    return scale * np.dot(w, g(t0 + h * s))


def adaptive_unit(g: Callable[[np.ndarray], np.ndarray], exp0: float = 0.0,
                  exp1: float = 0.0, tol: float = DEFAULT_TOL,
                  budget: int = DEFAULT_BUDGET) -> QuadratureResult:
    """Integrate g(t) t**exp0 (1 - t)**exp1 over [0, 1].

    g may return shape (n,) or (n, k); the latter integrates k functions at
    once with a common panel refinement driven by the worst component.

    Global adaptive bisection; the two end panels always keep their Jacobi
    weight, so singular endpoints are resolved exactly at every level.
    """
    if exp0 <= -1 or exp1 <= -1:
        raise ValueError("endpoint exponents must exceed -1")

    def weighted(t0, t1):
        # exponent bookkeeping for a sub-panel: only panels touching an end keep
        # its weight; elsewhere the weight is smooth and folded into g
        le = exp0 if t0 == 0.0 else 0.0
        re = exp1 if t1 == 1.0 else 0.0
        if le == 0.0 and re == 0.0 and (exp0 != 0.0 or exp1 != 0.0):
            def gw(t):
                return _scale_rows(g(t), t**exp0 * (1.0 - t) ** exp1)
        elif le == 0.0 and exp0 != 0.0:
            def gw(t):
                return _scale_rows(g(t), t**exp0)
        elif re == 0.0 and exp1 != 0.0:
            def gw(t):
                return _scale_rows(g(t), (1.0 - t) ** exp1)
        else:
            gw = g
        # rescale the panel-local Jacobi weight back to the global one
        fac = (t1 - t0) ** le * (t1 - t0) ** re
        lo = _panel(gw, t0, t1, le, re, _LOW) * fac
        hi = _panel(gw, t0, t1, le, re, _HIGH) * fac
        return hi, float(np.max(np.abs(hi - lo)))

    evals = _LOW + _HIGH
    val, err = weighted(0.0, 1.0)
    heap = [(-err, 0.0, 1.0, val)]  # (t0, t1) are unique, so ties never reach val
    total, total_err = val, err
    while total_err > tol * (1.0 + float(np.max(np.abs(total)))):
        if evals + 2 * (_LOW + _HIGH) > budget:
            raise QuadratureError(
                f"quadrature budget {budget} exhausted (error {total_err:.3e})",
                QuadratureResult(total, total_err, evals))
        neg_err, t0, t1, v = heapq.heappop(heap)
        tm = 0.5 * (t0 + t1)
        if tm <= t0 or tm >= t1:
            raise QuadratureError("panel width underflow",
                                  QuadratureResult(total, total_err, evals))
        v1, e1 = weighted(t0, tm)
        v2, e2 = weighted(tm, t1)
        evals += 2 * (_LOW + _HIGH)
        total += v1 + v2 - v
        total_err += e1 + e2 + neg_err
        heapq.heappush(heap, (-e1, t0, tm, v1))
        heapq.heappush(heap, (-e2, tm, t1, v2))
    # resum to shed accumulated rounding from the incremental updates
    total = sum(item[3] for item in heap)
    total_err = sum(-item[0] for item in heap)
    total = np.asarray(total, dtype=complex)
    return QuadratureResult(total if total.ndim else complex(total), float(total_err), evals)


def integrate_segment(f, a, b, exp_a: float = 0.0, exp_b: float = 0.0,
                      tol: float = DEFAULT_TOL,
                      budget: int = DEFAULT_BUDGET) -> QuadratureResult:
    """Integral of f(z) |z - a|**exp_a |z - b|**exp_b dz along the segment [a, b]."""
    if exp_a <= -1 or exp_b <= -1:
        raise ValueError(f"exponents must exceed -1, got {exp_a}, {exp_b}")
    a, b = complex(a), complex(b)
    d = b - a
    length = abs(d)
    if length == 0.0:
        return QuadratureResult(0j, 0.0, 0)
    const = d * length ** (exp_a + exp_b)

    def g(t):
        return const * np.asarray(f(a + d * t), dtype=complex)

    return adaptive_unit(g, exp_a, exp_b, tol, budget)


def integrate_arc(f, center, radius: float, theta_start: float, theta_end: float,
                  tol: float = DEFAULT_TOL, budget: int = DEFAULT_BUDGET,
                  with_angle: bool = False, singularities=(),
                  margin: float = 0.0) -> QuadratureResult:
    """Integral of f over the arc center + radius*exp(i theta), theta_start -> theta_end.

    With ``with_angle`` the integrand is called as f(z, theta), letting
    branch-tracked integrands continue their phase in the unwrapped angle.
    Arcs passing within ``margin`` of any listed singularity are rejected.
    """
    center = complex(center)
    span = theta_end - theta_start
    for s in singularities:
        s = complex(s)
        if abs(abs(s - center) - radius) <= margin:
            ang = math.atan2((s - center).imag, (s - center).real)
            lo, hi = sorted((theta_start, theta_end))
            k = math.ceil((lo - ang) / (2 * math.pi))
            if ang + 2 * math.pi * k <= hi or abs(span) >= 2 * math.pi:
                raise ValueError(f"arc passes within {margin} of singularity {s}")
    if span == 0.0:
        return QuadratureResult(0j, 0.0, 0)

    def g(t):
        th = theta_start + span * t
        e = np.exp(1j * th)
        z = center + radius * e
        vals = f(z, th) if with_angle else f(z)
        vals = np.asarray(vals, dtype=complex)
        w = (1j * radius * span) * e
        return vals * (w if vals.ndim == 1 else w[:, None])

    return adaptive_unit(g, 0.0, 0.0, tol, budget)


def integrate_halfline(f, start: float, decay_exponent: float, tol: float = DEFAULT_TOL,
                       exp_start: float = 0.0, budget: int = DEFAULT_BUDGET) -> QuadratureResult:
    """Integral of f(t) (t - start)**exp_start over [start, inf).

    ``decay_exponent`` p states f(t) (t - start)**exp_start ~ C t**p at
    infinity (p < -1). The
    substitution t = start + (1 - s**2)/s**2 compactifies to s in (0, 1];
    the algebraic behaviour at both ends becomes Jacobi weights.
    """
    if decay_exponent >= -1:
        raise ValueError(f"insufficient decay t**{decay_exponent}; need exponent < -1")
    if start <= 0:
        raise ValueError("half-line start must be positive")
    if exp_start <= -1:
        raise ValueError("exp_start must exceed -1")
    p, e = float(decay_exponent), float(exp_start)
    q = p - e  # decay of f alone
    s_exp = -2.0 * p - 3.0

    def g(s):
        s = s.real
        t = start + (1.0 - s * s) / (s * s)
        # t**q * s**(2q) written without the s -> 0 blow-up
        tq = (1.0 + (start - 1.0) * s * s) ** q
        vals = np.asarray(f(t), dtype=complex)
        w = 2.0 * t ** (-q) * tq * (1.0 + s) ** e
        return vals * (w if vals.ndim == 1 else w[:, None])

    if s_exp <= -1:
        raise ValueError("integrand not integrable at infinity")
    return adaptive_unit(g, s_exp, e, tol, budget)


def integrate_path(f, segments, tol: float = DEFAULT_TOL) -> QuadratureResult:
    """Sum of integrals over consecutive PathSegments (single-valued f only)."""
    value, err, n = 0j, 0.0, 0
    for seg in segments:
        if seg.kind == "line":
            r = integrate_segment(f, seg.start, seg.end, seg.exp_start, seg.exp_end, tol)
        elif seg.kind == "arc":
            r = integrate_arc(f, seg.center, seg.radius, seg.theta_start, seg.theta_end, tol)
        else:
            raise ValueError("half-lines need an explicit decay exponent; use integrate_halfline")
        value += r.value
        err += r.error_estimate
        n += r.evaluations
    return QuadratureResult(value, err, n)
