"""Half-plane model of the torus family at alpha = 0, tau = i.

The quarter square is the image of the upper half-plane under the normalized
Schwarz-Christoffel map T (T(-1) = i/2, T(0) = 0, T(1) = 1/2). In these
coordinates the period map reduces to the improper integrals psi1, psi2.
"""
from __future__ import annotations

import functools
import math

import numpy as np
from scipy.optimize import brentq
from scipy.special import ellipk, ellipkinc

from ..quadrature import integrate_halfline, integrate_segment

PSI_TOL = 1e-13
_K = float(ellipk(-1.0))  # int_0^1 dw / sqrt(w(1 - w^2)) = 2 K(-1)


def _T_unit(x: float) -> float:
    """T on [0, 1]: F(arcsin sqrt x | -1) / (2 K(-1))."""
    return float(ellipkinc(math.asin(math.sqrt(min(max(x, 0.0), 1.0))), -1.0)) / (2 * _K)


def _T_real(x: float) -> complex:
    if 0.0 <= x <= 1.0:
        return complex(_T_unit(x))
    if x > 1.0:
        return complex(0.5, 0.5 - _T_unit(1.0 / x))
    # T(-x) = i conj T(x) on the real axis
    return 1j * _T_real(-x).conjugate()


def T_map(z, tol: float = 1e-13) -> complex:
    """Normalized Schwarz-Christoffel map of the closed upper half-plane onto
    the square [0, 1/2]^2, sending -1, 0, 1, inf to i/2, 0, 1/2, (1 + i)/2."""
    z = complex(z)
    if z.imag < 0:
        raise ValueError("T is defined on the closed upper half-plane")
    if math.isinf(z.real) or math.isinf(z.imag):
        return complex(0.5, 0.5)
    if z.imag == 0.0:
        return _T_real(z.real)
    # 0 -> i along the imaginary axis, then straight to z (stays off the real axis)
    def f(w):
        return 1.0 / (np.sqrt(w) * np.sqrt((1.0 - w) * (1.0 + w)))
    r = integrate_segment(f, 1j, z, tol=tol)
    return _T_at_i() + complex(r.value) / (4 * _K)


@functools.lru_cache(maxsize=None)
def _T_at_i() -> complex:
    ph = np.exp(-0.25j * math.pi)
    r = integrate_segment(lambda w: ph / np.sqrt((1.0 - w) * (1.0 + w)), 0.0, 1j,
                          exp_a=-0.5, tol=1e-14)
    return complex(r.value) / (4 * _K)


def T_derivative(z: complex) -> complex:
    z = complex(z)
    return 1.0 / (4 * _K * np.sqrt(z) * np.sqrt((1.0 - z) * (1.0 + z)))


def T_inverse(w, tol: float = 1e-12) -> complex:
    """Inverse of T on the closed quarter square [0, 1/2] x [0, 1/2]."""
    w = complex(w)
    eps = 1e-14
    if not (-eps <= w.real <= 0.5 + eps and -eps <= w.imag <= 0.5 + eps):
        raise ValueError(f"{w} lies outside the quarter square")
    if abs(w.imag) <= eps:
        return complex(brentq(lambda x: _T_unit(x) - w.real, 0.0, 1.0, xtol=1e-15))
    if abs(w.real) <= eps:
        return -T_inverse(w.imag, tol)
    if abs(w - (0.5 + 0.5j)) < eps:
        return complex(math.inf)
    if abs(w.real - 0.5) <= eps:
        v = w.imag
        return complex(1.0 / brentq(lambda x: _T_unit(x) - (0.5 - v), 0.0, 1.0, xtol=1e-15))
    if abs(w.imag - 0.5) <= eps:
        return -T_inverse(0.5 + 1j * w.real, tol).conjugate()
    # interior: Newton from the image of a coarse seed grid
    seeds = [complex(x, y) for x in (-1.5, -0.5, 0.0, 0.5, 1.5) for y in (0.3, 1.0, 3.0)]
    z = min(seeds, key=lambda s: abs(T_map(s, 1e-8) - w))
    for _ in range(60):
        dz = (T_map(z) - w) / T_derivative(z)
        step = 1.0
        while (z - step * dz).imag <= 0:
            step *= 0.5
        z = z - step * dz
        if abs(dz) < tol * max(1.0, abs(z)):
            return z
    raise ValueError(f"T_inverse did not converge at {w}")


def rho_tilde(x: float) -> float:
    if not 0.0 < x < 1.0:
        raise ValueError("rho needs 0 < x < 1")
    return math.sqrt(x) / math.sqrt(1.0 - x * x)


def _check(x, y):
    if not (-1.0 < x < 1.0 and -1.0 < y < 1.0):
        raise ValueError(f"psi needs x, y in (-1, 1), got {x}, {y}")


def psi1(x: float, y: float, tol: float = PSI_TOL) -> float:
    """int_1^inf sqrt(t^2 - 1) / (sqrt(t) (t + x)(t - y)) dt."""
    _check(x, y)
    r = integrate_halfline(lambda t: np.sqrt(t + 1) / (np.sqrt(t) * (t + x) * (t - y)),
                           1.0, -1.5, tol, 0.5)
    return float(r.value.real)


def psi2(x: float, y: float, tol: float = PSI_TOL) -> float:
    """int_1^inf sqrt(t) / (sqrt(t^2 - 1)(t + x)(t - y)) dt."""
    _check(x, y)
    r = integrate_halfline(lambda t: np.sqrt(t) / (np.sqrt(t + 1) * (t + x) * (t - y)),
                           1.0, -2.5, tol, -0.5)
    return float(r.value.real)


def tildeP(x: float, y: float) -> np.ndarray:
    """(rho psi1(x, y) - psi2(x, y)/rho, rho psi1(-x, -y) - psi2(-x, -y)/rho), rho = rho(x).

    The complex period map carries a factor i on its second component; that
    constant is dropped here so both components are real. The determinant of
    the complex map is therefore i times tildeP_jacobian_det.
    """
    r = rho_tilde(x)
    return np.array([r * psi1(x, y) - psi2(x, y) / r,
                     r * psi1(-x, -y) - psi2(-x, -y) / r])


def _g(x: float) -> float:
    return rho_tilde(x) ** 2 * psi1(x, x) - psi2(x, x)


@functools.lru_cache(maxsize=None)
def a0_tilde() -> float:
    """Root of rho^2 psi1(a, a) = psi2(a, a) on (0, 1), to 1e-12."""
    return float(brentq(_g, 0.02, 0.98, xtol=1e-13, rtol=1e-15))


def a0_sign_scan(n: int = 49):
    xs = np.linspace(0.02, 0.98, n)
    return xs, np.sign([_g(x) for x in xs])


def a0_torus() -> float:
    """The same root in the torus coordinate a = 1/2 - T(a_tilde)."""
    return 0.5 - float(T_map(a0_tilde()).real)


def f1(x: float, tol: float = PSI_TOL) -> float:
    """2/(x^2 - 1) int_1^inf sqrt(t)(1 - t x) / (sqrt(t^2 - 1)(t - x)^2 (t + x)) dt."""
    _check_unit(x)
    r = integrate_halfline(
        lambda t: np.sqrt(t) * (1 - t * x) / (np.sqrt(t + 1) * (t - x) ** 2 * (t + x)),
        1.0, -2.5, tol, -0.5)
    return float(2.0 / (x * x - 1.0) * r.value.real)


def f2(x: float, tol: float = PSI_TOL) -> float:
    """int_1^inf N(t) / (2 sqrt(t) sqrt(t^2 - 1) sqrt(x)(1 - x^2)^{5/2}(t - x)^2) dt with
    N(t) = t^2 (x^3 + x) + t (1 - 2x^2 - 3x^4) + x(5x^2 - 3)."""
    _check_unit(x)
    den = 2.0 * math.sqrt(x) * (1.0 - x * x) ** 2.5

    def w(t):
        num = t * t * (x**3 + x) + t * (1 - 2 * x * x - 3 * x**4) + x * (5 * x * x - 3)
        return num / (np.sqrt(t) * np.sqrt(t + 1) * (t - x) ** 2)
    r = integrate_halfline(w, 1.0, -1.5, tol, -0.5)
    return float(r.value.real / den)


def _check_unit(x):
    if not 0.0 < x < 1.0:
        raise ValueError(f"need 0 < x < 1, got {x}")


def _d(f, x, y, k, h=1e-5):
    if k == 1:
        return (f(x + h, y) - f(x - h, y)) / (2 * h)
    return (f(x, y + h) - f(x, y - h)) / (2 * h)


def rho_prime(x: float) -> float:
    return (1 + x * x) / (2 * math.sqrt(x) * (1 - x * x) ** 1.5)


def f1_from_psi(x: float) -> float:
    """f1 assembled from finite-difference partials of psi1, psi2 on the diagonal."""
    r2 = rho_tilde(x) ** 2
    return (r2 * (_d(psi1, x, x, 2) - _d(psi1, x, x, 1))
            - _d(psi2, x, x, 2) + _d(psi2, x, x, 1))


def f2_from_psi(x: float) -> float:
    r, rp = rho_tilde(x), rho_prime(x)
    return (r * r * rp * psi1(x, x) + rp * psi2(x, x)
            + r**3 * (_d(psi1, x, x, 2) + _d(psi1, x, x, 1))
            - r * (_d(psi2, x, x, 2) + _d(psi2, x, x, 1)))


def tildeP_jacobian_det(x: float, y: float, h: float = 1e-5) -> float:
    """det of the finite-difference Jacobian of the real-valued tildeP."""
    jx = (tildeP(x + h, y) - tildeP(x - h, y)) / (2 * h)
    jy = (tildeP(x, y + h) - tildeP(x, y - h)) / (2 * h)
    return float(jx[0] * jy[1] - jx[1] * jy[0])
