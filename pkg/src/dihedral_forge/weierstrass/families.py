"""Weierstrass data of the three families, built from factor lists."""
from __future__ import annotations

import cmath
import math

from ..theta import TorusModulus
from .data import WeierstrassData
from .forms import INF, HalfPlaneForm, ThetaBracket, TorusForm


def de_forms(a: float, b: float, alpha: float):
    """phi1, phi2 of the octagon family; both positive on (0, 1)."""
    if not 1.0 < a < b:
        raise ValueError(f"need 1 < a < b, got a={a}, b={b}")
    p, m = 1.0 - alpha, alpha - 1.0
    phi1 = HalfPlaneForm(((0.0, p), (1.0, m), (-1.0, m), (a, p), (-a, p), (b, m), (-b, m)),
                         1.0, (0.0, 1.0))
    phi2 = HalfPlaneForm(((0.0, m), (1.0, p), (-1.0, p), (a, m), (-a, m), (b, p), (-b, p)),
                         1.0, (0.0, 1.0))
    return phi1, phi2


def de_data(a: float, b: float, alpha: float, rho: float = 1.0) -> WeierstrassData:
    phi1, phi2 = de_forms(a, b, alpha)
    dh = HalfPlaneForm((), 1.0, (0.0, 1.0))
    punct = (-b, -a, -1.0, 0.0, 1.0, a, b, INF)
    return WeierstrassData(phi1, phi2, dh, rho, punct, "de",
                           {"a": a, "b": b, "alpha": alpha, "rho": rho})


def dccw_forms(a: float, b: float, c: float, alpha: float):
    """G dh and dh/G of the hexagon family (rho = 1); positive on (-1, 1)."""
    if not 1.0 < a < b < c:
        raise ValueError(f"need 1 < a < b < c, got {a}, {b}, {c}")
    al = alpha
    phi1 = HalfPlaneForm(((-c, al - 1), (-b, 2.0), (-a, -al - 1), (-1.0, al - 1),
                          (1.0, 1 - al), (a, al - 1), (c, -al - 1)), 1.0, (-1.0, 1.0))
    phi2 = HalfPlaneForm(((-c, -al - 1), (-a, al - 1), (-1.0, 1 - al), (1.0, al - 1),
                          (a, -al - 1), (b, 2.0), (c, al - 1)), 1.0, (-1.0, 1.0))
    dh = HalfPlaneForm(((b, 1.0), (-b, 1.0), (a, -1.0), (-a, -1.0), (c, -1.0), (-c, -1.0)),
                       1.0, (-1.0, 1.0))
    return phi1, phi2, dh


def dccw_data(a: float, b: float, c: float, alpha: float, rho: float = 1.0) -> WeierstrassData:
    phi1, phi2, dh = dccw_forms(a, b, c, alpha)
    punct = (-c, -a, -1.0, 1.0, a, c)
    return WeierstrassData(phi1, phi2, dh, rho, punct, "dccw",
                           {"a": a, "b": b, "c": c, "alpha": alpha, "rho": rho})


def dks_b(a: float, alpha: float) -> float:
    """Shift b that makes the planes through the top edge and the right half of
    the bottom edge parallel."""
    return a * (1.0 - alpha) + alpha / 2.0


def dks_forms(a: float, c: float, tau, alpha: float):
    mod = tau if isinstance(tau, TorusModulus) else TorusModulus(tau)
    t = mod.t
    if not 0.0 < a < 0.5:
        raise ValueError(f"a must lie in (0, 1/2), got {a}")
    if not 0.0 < c < t / 2:
        raise ValueError(f"c must lie in (0, Im tau / 2), got {c}")
    b = dks_b(a, alpha)
    h = mod.tau / 2
    zb_m, zb_p = h - b, h + b
    zc_m, zc_p = h - 1j * c, h + 1j * c
    br = ThetaBracket(0.5 + a, 0.5 - a, 1.0 - alpha, 0.0)
    br_inv = ThetaBracket(0.5 + a, 0.5 - a, -(1.0 - alpha), 0.0)
    ph = cmath.exp(-2j * math.pi * b)
    gdh = TorusForm(((zb_m, 2), (zc_m, -1), (zc_p, -1)), ph, mod, br)
    inv = TorusForm(((zb_p, 2), (zc_m, -1), (zc_p, -1)), 1.0 / ph, mod, br_inv)
    dh = TorusForm(((zb_p, 1), (zb_m, 1), (zc_m, -1), (zc_p, -1)), 1.0, mod)
    return gdh, inv, dh, b


def dks_data(a: float, c: float, tau, alpha: float) -> WeierstrassData:
    gdh, inv, dh, b = dks_forms(a, c, tau, alpha)
    t = gdh.modulus.t
    punct = (complex(0.5 - a), complex(0.0, t / 2 - c))
    return WeierstrassData(gdh, inv, dh, 1.0, punct, "dks",
                           {"a": a, "c": c, "tau": complex(0, t), "alpha": alpha, "b": b})
