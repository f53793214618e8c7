"""Weierstrass data (G dh, dh/G, dh), the null forms and the minimal map."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from ..quadrature import DEFAULT_TOL, PathSegment, integrate_arc, integrate_segment
from .forms import INF, PoleError, product_order_rational


class BranchPhaseError(ValueError):
    """Period inputs with inconsistent phases; points at a branch bookkeeping bug."""


@dataclass(frozen=True)
class WeierstrassData:
    """G dh = rho * gdh, (1/G) dh = inv_gdh / rho, and dh.

    ``punctures`` lists the points where the forms are singular or branched;
    ``family`` and ``params`` are carried for reporting only.
    """

    gdh: object
    inv_gdh: object
    dh: object
    rho: float = 1.0
    punctures: tuple = ()
    family: str = ""
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.rho > 0:
            raise ValueError("rho must be positive")

    def forms_at(self, z):
        """Values of (G dh, dh / G, dh) at z as an array of shape z.shape + (3,)."""
        z = np.asarray(z, dtype=complex)
        return np.stack([self.rho * np.asarray(self.gdh(z)),
                         np.asarray(self.inv_gdh(z)) / self.rho,
                         np.asarray(self.dh(z)) * np.ones(z.shape)], axis=-1)

    def gauss(self, z):
        """G = (G dh) / dh. Undefined at zeros of dh."""
        v = self.forms_at(z)
        return v[..., 0] / v[..., 2]

    def scaled_height(self, s: float) -> "WeierstrassData":
        """Multiply dh by the real s (G fixed): the surface scales by s."""
        return WeierstrassData(self.gdh.scaled(s), self.inv_gdh.scaled(s), self.dh.scaled(s),
                               self.rho, self.punctures, self.family, self.params)

    def rotated(self, t: float) -> "WeierstrassData":
        """Multiply G by e^{it}: a rotation of the surface about the vertical axis."""
        return WeierstrassData(self.gdh.scaled(cmath.exp(1j * t)),
                               self.inv_gdh.scaled(cmath.exp(-1j * t)), self.dh,
                               self.rho, self.punctures, self.family, self.params)


@dataclass(frozen=True)
class MinimalMapSample:
    param: complex
    position: np.ndarray
    normal: np.ndarray


def omega_forms(data: WeierstrassData, z):
    """(omega_1, omega_2, omega_3) coefficients at z."""
    z = np.asarray(z, dtype=complex)
    try:
        v = data.forms_at(z)
    except PoleError as exc:
        raise PoleError(f"omega forms undefined at {z}: {exc}") from exc
    gd, ig, dh = v[..., 0], v[..., 1], v[..., 2]
    w1 = 0.5 * (ig - gd)
    w2 = 0.5j * (ig + gd)
    return w1, w2, dh


def null_residual(data: WeierstrassData, z):
    """|w1^2 + w2^2 + w3^2| relative to sum |wk|^2."""
    w1, w2, w3 = omega_forms(data, z)
    num = np.abs(w1**2 + w2**2 + w3**2)
    den = np.abs(w1) ** 2 + np.abs(w2) ** 2 + np.abs(w3) ** 2
    return num / np.where(den > 0, den, 1.0)


def periods_to_position(phi1, phi2, omega3):
    """Real displacement from integrals of G dh, dh/G and dh."""
    phi1, phi2, omega3 = (np.asarray(v) for v in (phi1, phi2, omega3))
    return np.stack([np.real(0.5 * (phi2 - phi1)),
                     np.real(0.5j * (phi2 + phi1)),
                     np.real(omega3)], axis=-1)


def integrate_forms(data: WeierstrassData, path, tol: float = DEFAULT_TOL):
    """Complex integrals (int G dh, int dh/G, int dh) along a list of PathSegments."""
    total = np.zeros(3, dtype=complex)
    for seg in path:
        if seg.kind == "line":
            r = integrate_segment(data.forms_at, seg.start, seg.end,
                                  seg.exp_start, seg.exp_end, tol)
        elif seg.kind == "arc":
            r = integrate_arc(data.forms_at, seg.center, seg.radius,
                              seg.theta_start, seg.theta_end, tol)
        else:
            raise ValueError("minimal map paths use lines and arcs only")
        total = total + np.asarray(r.value)
    return total


def integrate_map(data: WeierstrassData, path, base: complex | None = None,
                  tol: float = DEFAULT_TOL) -> np.ndarray:
    """Re of the componentwise integral of (w1, w2, w3) along ``path``."""
    path = list(path)
    if not path:
        return np.zeros(3)
    if base is not None and abs(complex(path[0].start_point) - complex(base)) > 1e-12:
        raise ValueError("path must start at the base point")
    p = integrate_forms(data, path, tol)
    return periods_to_position(p[0], p[1], p[2])


def unit_normal(G):
    """Stereographic preimage of G: the unit normal (2 Re G, 2 Im G, |G|^2 - 1)/(|G|^2 + 1)."""
    G = np.asarray(G, dtype=complex)
    m = np.abs(G) ** 2
    big = ~np.isfinite(m)
    with np.errstate(invalid="ignore", over="ignore"):
        n = np.stack([2 * G.real, 2 * G.imag, m - 1.0], axis=-1) / (m + 1.0)[..., None]
    if np.any(big):
        n[big] = (0.0, 0.0, 1.0)
    return n


def sample_map(data: WeierstrassData, base: complex, z: complex,
               tol: float = DEFAULT_TOL) -> MinimalMapSample:
    pos = integrate_map(data, [PathSegment.line(base, z)], base, tol)
    return MinimalMapSample(complex(z), pos, unit_normal(data.gauss(z)))


def lopez_ros_rho(p01_gdh: complex, p01_invgdh: complex, tol: float = 1e-8) -> float:
    """The positive scalar rho with rho * p01_gdh = conj(p01_invgdh) / rho.

    ``p01_gdh`` and ``p01_invgdh`` are the periods of the unscaled forms on
    the same cycle. The ratio conj(p01_invgdh) / p01_gdh must be a positive
    real; any other phase means the branches upstream are inconsistent.
    """
    p1, p2 = complex(p01_gdh), complex(p01_invgdh)
    if p1 == 0 or p2 == 0:
        raise ValueError("periods must be nonzero")
    ratio = p2.conjugate() / p1
    if abs(cmath.phase(ratio)) > tol:
        raise BranchPhaseError(
            f"conj(p2)/p1 has phase {cmath.phase(ratio):.3e}; expected a positive real")
    return math.sqrt(abs(ratio))


@dataclass(frozen=True)
class EndClassification:
    kind: str           # 'catenoidal', 'enneper', 'scherk', 'regular' or 'unclassified'
    g_order: float      # > 0 zero of G, < 0 pole
    dh_order: float     # > 0 zero of dh, < 0 pole
    cover_degree: int   # k of the local k-fold cover used to read the orders
    gdh_order: int
    inv_gdh_order: int


def classify_end(data: WeierstrassData, puncture) -> EndClassification:
    """End type at a puncture from the local exponents of G dh and dh/G.

    With fractional exponents e1, e2 the orders are read on the k-fold cover
    that makes k(e + 1) integral (for alpha = 1/n this is the extension by
    the dihedral group); then G and dh orders follow from
    ord G = (o1 - o2)/2, ord dh = (o1 + o2)/2.
    """
    e1 = data.gdh.order_at(puncture)
    e2 = data.inv_gdh.order_at(puncture)
    k, o1, o2 = product_order_rational(e1, e2)
    g_ord = (o1 - o2) / 2
    dh_ord = (o1 + o2) / 2
    max_pole = max(-o1, -o2, -dh_ord, 0)
    if dh_ord == -1 and abs(g_ord) == 1:
        kind = "catenoidal"
    elif dh_ord <= -2:
        kind = "enneper"
    elif max_pole == 1:
        kind = "scherk"
    elif max_pole == 0:
        kind = "regular"
    else:
        kind = "unclassified"
    return EndClassification(kind, g_ord, dh_ord, k, o1, o2)


def growth_rate(a: float, b: float, c: float, puncture: str) -> float:
    """Logarithmic growth of the catenoidal ends at a or c of the hexagon family."""
    if puncture == "a":
        return (b * b - a * a) / (2 * a * (a * a - c * c))
    if puncture == "c":
        return (c * c - b * b) / (2 * c * (a * a - c * c))
    raise ValueError("puncture must be 'a' or 'c'")


__all__ = [
    "WeierstrassData", "MinimalMapSample", "EndClassification", "BranchPhaseError",
    "omega_forms", "null_residual", "integrate_forms", "integrate_map", "periods_to_position",
    "unit_normal", "sample_map", "lopez_ros_rho", "classify_end", "growth_rate", "INF",
]
