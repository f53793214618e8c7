"""Symbolic 1-forms: products of linear factors on the upper half-plane and
products of theta factors on rectangular tori.

A HalfPlaneForm is

    prefactor * prod_k (s_k (z - r_k)) ** e_k

where s_k = +1 for roots left of the normalization interval and -1 for roots
right of it. With each factor on its upper half-plane branch the product is a
positive real on the interval, which is how the branch is pinned down.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..theta import TorusModulus, log_theta_upper, theta

INF = math.inf


class PoleError(ValueError):
    """Evaluation hit a root carrying a negative exponent."""


def _as_fraction(x: float, max_den: int = 10**6) -> Fraction:
    return Fraction(x).limit_denominator(max_den)


def _is_integer(x: float, eps: float = 1e-12) -> bool:
    return abs(x - round(x)) < eps


@dataclass(frozen=True)
class HalfPlaneForm:
    factors: tuple = ()
    prefactor: complex = 1.0
    normalization_interval: tuple = (0.0, 1.0)
    _signs: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        facs = tuple((float(r), float(e)) for r, e in self.factors)
        object.__setattr__(self, "factors", facs)
        lo, hi = self.normalization_interval
        if not lo < hi:
            raise ValueError("normalization interval must be increasing")
        signs = []
        for r, e in facs:
            if not math.isfinite(e):
                raise ValueError("exponents must be finite")
            if r <= lo:
                signs.append(1)
            elif r >= hi:
                signs.append(-1)
            else:
                raise ValueError(f"root {r} lies inside the normalization interval {lo, hi}")
        object.__setattr__(self, "_signs", tuple(signs))

    # --- structure -------------------------------------------------------
    @property
    def roots(self) -> tuple:
        return tuple(sorted({r for r, _ in self.factors}))

    def order_at(self, point) -> float:
        """Local exponent: f ~ (z - p)**order near p, or in w = 1/z at infinity."""
        if point == INF or point == "inf":
            return -2.0 - sum(e for _, e in self.factors)
        return sum(e for r, e in self.factors if r == point)

    @property
    def is_rational(self) -> bool:
        return all(_is_integer(e) for _, e in self.factors)

    def scaled(self, c) -> "HalfPlaneForm":
        return HalfPlaneForm(self.factors, self.prefactor * c, self.normalization_interval)

    def residue(self, root: float) -> complex:
        """Residue at a simple pole of a form with integer exponents."""
        if not self.is_rational:
            raise ValueError("residues are only defined here for integer exponents")
        order = round(self.order_at(root))
        if order >= 0:
            return 0j
        if order != -1:
            raise ValueError(f"pole of order {-order} at {root}; only simple poles supported")
        val = complex(self.prefactor)
        for (r, e), s in zip(self.factors, self._signs):
            k = round(e)
            val *= float(s) ** k if r == root else (s * (root - r)) ** k
        return val

    # --- evaluation ------------------------------------------------------
    def _check_poles(self, z):
        for r, e in self.factors:
            if e < 0 and np.any(z == r):
                raise PoleError(f"form has a pole at z={r} (exponent {e})")

    def log_value(self, z):
        """Log of the form on the closed upper half-plane branch."""
        z = np.asarray(z, dtype=complex)
        if np.any(z.imag < 0):
            raise ValueError("the half-plane branch is defined for Im z >= 0 only")
        self._check_poles(z)
        im = np.where(z.imag > 0, z.imag, 0.0)
        out = np.full(z.shape, complex(np.log(complex(self.prefactor))))
        for (r, e), s in zip(self.factors, self._signs):
            dr = z.real - r
            arg = np.arctan2(im, dr)
            if s < 0:
                arg = arg - math.pi
            with np.errstate(divide="ignore"):
                out = out + e * (np.log(np.hypot(dr, im)) + 1j * arg)
        return out

    def __call__(self, z):
        out = np.exp(self.log_value(z))
        return out if out.ndim else complex(out)

    def arc_integrand(self, center: complex, radius: float, theta0: float = 0.0):
        """f(z, theta) continued analytically along center + radius e^{i theta}.

        The branch agrees with the half-plane branch at theta0, whose point
        must lie in the closed upper half-plane. Roots inside the circle add
        a full turn of argument per revolution; outside ones return to start.
        """
        center = complex(center)
        z0 = center + radius * np.exp(1j * theta0)
        if z0.imag < -1e-15 * max(1.0, abs(z0)):
            raise ValueError("arc must start in the closed upper half-plane")
        z0 = complex(z0.real, max(z0.imag, 0.0))
        # Offsets are read off at a reference angle where every factor is nonzero and
        # the half-plane branch is exact; at a root sitting on the start point the
        # argument is undefined, so the reference moves a little along the arc into
        # the open upper half-plane.
        th_ref = theta0
        if z0.imag <= 0 or any(abs(z0 - r) < 1e-12 * max(1.0, radius) for r, _ in self.factors):
            d = 1e-6
            up = (center + radius * np.exp(1j * (theta0 + d))).imag
            th_ref = theta0 + d if up > 0 else theta0 - d
        z_ref = center + radius * np.exp(1j * th_ref)
        data = []
        for (r, e), s in zip(self.factors, self._signs):
            arg0 = float(np.angle(complex(z_ref.real - r, max(z_ref.imag, 0.0))))
            if s < 0:
                arg0 -= math.pi
            inside = abs(r - center) < radius
            on_arc = abs(abs(r - center) - radius) < 1e-14 * max(1.0, radius)
            if on_arc and not (e >= 0 and _is_integer(e)):
                raise ValueError(f"arc passes through the root {r}")
            a0 = self._arc_arg(r, center, radius, th_ref, inside)
            data.append((r, e, inside, arg0 - a0))
        logpre = complex(np.log(complex(self.prefactor)))

        def f(z, th):
            out = np.full(np.shape(z), logpre)
            for r, e, inside, off in data:
                arg = self._arc_arg(r, center, radius, th, inside) + off
                out = out + e * (np.log(np.abs(z - r)) + 1j * arg)
            return np.exp(out)

        return f

    @staticmethod
    def _arc_arg(r, center, radius, th, inside):
        th = np.asarray(th, dtype=float)
        if inside:
            # arg(z - r) = th + Arg(1 - (r - c) e^{-i th} / R), |(r - c)/R| < 1
            return th + np.angle(1.0 - (r - center) * np.exp(-1j * th) / radius)
        # arg(z - r) = Arg(c - r) + Arg(1 + (z - c)/(c - r)), |(z - c)/(c - r)| < 1
        z = center + radius * np.exp(1j * th)
        return np.angle(center - r) + np.angle(1.0 + (z - center) / (center - r))


class BranchState:
    """Running argument of each linear factor along a path.

    Seeded from the half-plane branch at the first point; each subsequent
    point must be close enough that no factor turns by more than pi.
    """

    def __init__(self, form: HalfPlaneForm, z0: complex):
        self.form = form
        z0 = complex(z0)
        base = HalfPlaneForm(((r, 1.0) for r, _ in form.factors), 1.0,
                             form.normalization_interval)
        self.args = np.array([
            (np.angle(complex(z0.real - r, max(z0.imag, 0.0))) - (math.pi if s < 0 else 0.0))
            for (r, _), s in zip(base.factors, form._signs)], dtype=float)
        self.z = z0

    def advance(self, z: complex) -> complex:
        """Move to z, update the tracked arguments, and return the form value."""
        z = complex(z)
        roots = np.array([r for r, _ in self.form.factors])
        exps = np.array([e for _, e in self.form.factors])
        if np.any((z == roots) & (exps < 0)):
            raise PoleError(f"pole at {z}")
        step = np.angle((z - roots) / (self.z - roots)) if roots.size else np.zeros(0)
        self.args = self.args + step
        self.z = z
        logv = np.log(complex(self.form.prefactor)) + np.sum(
            exps * (np.log(np.abs(z - roots)) + 1j * self.args))
        return complex(np.exp(logv))


def eval_form(form, z, branch_state: BranchState | None = None):
    """Evaluate a form; with a BranchState the value is continued along the
    sequence of points fed to successive calls."""
    if branch_state is None:
        return form(z)
    if np.ndim(z):
        return np.array([branch_state.advance(zz) for zz in np.ravel(z)]).reshape(np.shape(z))
    return branch_state.advance(z)


# --- torus forms ---------------------------------------------------------

@dataclass(frozen=True)
class ThetaBracket:
    """(theta(z - zero_shift) / theta(z - pole_shift)) ** power on the strip
    0 <= Im z < Im tau, normalized to be real positive at ``anchor``."""

    zero_shift: float
    pole_shift: float
    power: float
    anchor: float


@dataclass(frozen=True)
class TorusForm:
    """prefactor * prod theta(z - shift)**power * bracket, on C / (Z + tau Z)."""

    theta_factors: tuple
    prefactor: complex
    modulus: TorusModulus
    bracket: ThetaBracket | None = None

    def __post_init__(self):
        facs = tuple((complex(s), int(p)) for s, p in self.theta_factors)
        for (_, p), (_, p0) in zip(facs, self.theta_factors):
            if p != p0:
                raise ValueError("theta factor powers must be integers; use a bracket")
        object.__setattr__(self, "theta_factors", facs)
        if not isinstance(self.modulus, TorusModulus):
            object.__setattr__(self, "modulus", TorusModulus(self.modulus))

    @property
    def tau(self) -> complex:
        return self.modulus.tau

    def divisor_degree(self) -> float:
        deg = sum(p for _, p in self.theta_factors)
        if self.bracket is not None:
            deg += self.bracket.power - self.bracket.power
        return deg

    def _bracket_log(self, z):
        br = self.bracket
        tau = self.tau

        def raw(w):
            return log_theta_upper(w - br.zero_shift, tau) - log_theta_upper(w - br.pole_shift, tau)

        return br.power * (raw(z) - 1j * self._bracket_offset)

    @functools.cached_property
    def _bracket_offset(self) -> float:
        br = self.bracket
        w = np.array([complex(br.anchor)])
        raw = log_theta_upper(w - br.zero_shift, self.tau) - log_theta_upper(w - br.pole_shift, self.tau)
        return float(np.imag(raw)[0])

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.full(z.shape, complex(self.prefactor))
        for s, p in self.theta_factors:
            th = theta(z - s, self.tau)
            if p < 0 and np.any(th == 0):
                raise PoleError(f"torus form has a pole at a translate of {s}")
            out = out * th ** p
        if self.bracket is not None:
            out = out * np.exp(self._bracket_log(z))
        return out if out.ndim else complex(out)

    def _same_point(self, p, q) -> bool:
        d = complex(p) - complex(q)
        t = self.modulus.t
        m = round(d.imag / t)
        d = d - 1j * m * t
        return abs(d - round(d.real)) < 1e-12

    def order_at(self, point) -> float:
        """Local exponent at a point of the torus (zeros positive)."""
        order = float(sum(p for s, p in self.theta_factors if self._same_point(s, point)))
        br = self.bracket
        if br is not None:
            if self._same_point(br.zero_shift, point):
                order += br.power
            if self._same_point(br.pole_shift, point):
                order -= br.power
        return order

    def scaled(self, c) -> "TorusForm":
        return TorusForm(self.theta_factors, self.prefactor * c, self.modulus, self.bracket)


def product_order_rational(e1: float, e2: float):
    """Smallest k with k(e1 + 1), k(e2 + 1) integral; used to read orders of
    forms on the k-fold branched cover that undoes the fractional exponents."""
    f1, f2 = _as_fraction(e1 + 1.0), _as_fraction(e2 + 1.0)
    k = math.lcm(f1.denominator, f2.denominator)
    return k, int(k * f1) - 1, int(k * f2) - 1
