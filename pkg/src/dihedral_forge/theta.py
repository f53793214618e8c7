"""Odd Jacobi theta function on rectangular tori.

    theta(z, tau) = sum_n exp(pi i (n + 1/2)**2 tau + 2 pi i (n + 1/2)(z - 1/2))

Simple zeros exactly at the lattice Z + tau Z. Only purely imaginary tau is
supported. Note the series is anti-periodic in the real direction,
theta(z + 1) = -theta(z); theta(z + tau) = -exp(-pi i tau - 2 pi i z) theta(z).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

DEFAULT_TOL = 1e-16


@dataclass(frozen=True)
class TorusModulus:
    tau: complex

    def __post_init__(self):
        tau = complex(self.tau)
        if tau.real != 0.0 or tau.imag <= 0.0:
            raise ValueError(f"tau must be purely imaginary with positive imaginary part, got {tau}")
        object.__setattr__(self, "tau", tau)

    @property
    def t(self) -> float:
        return self.tau.imag


def _modulus(tau) -> TorusModulus:
    return tau if isinstance(tau, TorusModulus) else TorusModulus(tau)


def _n_terms(t: float, y_max: float, tol: float, max_terms: int = 200) -> int:
    # Gaussian tail: exp(-pi t (N + 1/2)^2 + 2 pi |Im z| (N + 1/2)) < tol
    log_tol = math.log(tol)
    n = 1
    while -math.pi * t * (n + 0.5) ** 2 + 2 * math.pi * y_max * (n + 0.5) > log_tol:
        n += 1
        if n > max_terms:
            raise ValueError("theta series did not reach tolerance; |Im z| too large for tau")
    return n


def _reduce(z: np.ndarray, t: float):
    """Shift z by lattice vectors into |Re| <= 1/2, |Im| <= t/2.

    Returns the reduced point, and the sign and log-modulus/phase of the
    quasi-periodicity multiplier so that theta(z) = mult * theta(z_red).
    """
    tau = 1j * t
    m = np.round(z.imag / t)
    zr = z - m * tau
    k = np.round(zr.real)
    zr = zr - k
    # theta(w + m tau) = (-1)^m exp(-pi i m^2 tau - 2 pi i m w) theta(w),
    # theta(w + k) = (-1)^k theta(w)
    log_mult = -1j * math.pi * m * m * tau - 2j * math.pi * m * zr
    sign = np.where((m + k) % 2 == 0, 1.0, -1.0)
    return zr, sign, log_mult


def _series(z: np.ndarray, t: float, tol: float, deriv: bool = False) -> np.ndarray:
    y_max = float(np.max(np.abs(z.imag))) if z.size else 0.0
    n_max = _n_terms(t, y_max, tol)
    n = np.arange(-n_max - 1, n_max + 1) + 0.5
    expo = (1j * math.pi * 1j * t) * n**2 + 2j * math.pi * np.multiply.outer(z - 0.5, n)
    terms = np.exp(expo)
    if deriv:
        terms = terms * (2j * math.pi * n)
    return terms.sum(axis=-1)


def theta(z, tau, tol: float = DEFAULT_TOL):
    """theta(z, tau); array-friendly. Large |Im z| is reduced by quasi-periodicity
    and the exact multiplier restored in log space."""
    t = _modulus(tau).t
    z = np.asarray(z, dtype=complex)
    zr, sign, log_mult = _reduce(z, t)
    out = sign * np.exp(log_mult) * _series(zr, t, tol)
    out = np.where(zr == 0, 0j, out)  # exact zeros on the lattice
    return out if out.ndim else complex(out)


def log_theta_multiplier(z, tau):
    """Reduced point and log multiplier; for callers that need ratios of
    theta values far from the real axis without overflow."""
    t = _modulus(tau).t
    z = np.asarray(z, dtype=complex)
    zr, sign, log_mult = _reduce(z, t)
    return zr, sign, log_mult


def theta_prime(z, tau, tol: float = DEFAULT_TOL):
    """Derivative d theta / dz by the term-wise differentiated series."""
    t = _modulus(tau).t
    z = np.asarray(z, dtype=complex)
    # no reduction here: callers use |Im z| <= t/2
    out = _series(z, t, tol, deriv=True)
    return out if out.ndim else complex(out)


def theta_prime_zero(tau, tol: float = DEFAULT_TOL) -> complex:
    return complex(theta_prime(0.0, tau, tol))


def log_theta_upper(w, tau):
    """Analytic branch of log theta(w) on the strip 0 < Im w < Im tau.

    Built from the product formula
        theta(w) = 2 q^(1/4) sin(pi w) prod_n (1 - q^2n)(1 - q^2n e^{2 pi i w})(1 - q^2n e^{-2 pi i w}),
    q = exp(pi i tau), with log sin(pi w) = log(i/2) - i pi w + Log(1 - e^{2 pi i w}).
    Every principal Log above has argument in the right half-plane on the
    strip, so the result is continuous there and extends continuously to
    the real axis away from the integers.
    """
    t = _modulus(tau).t
    w = np.asarray(w, dtype=complex)
    if np.any(w.imag < 0) or np.any(w.imag >= t):
        raise ValueError("log_theta_upper needs 0 <= Im w < Im tau")
    q2 = math.exp(-2 * math.pi * t)
    e_pos = np.exp(2j * math.pi * w)
    e_neg = np.exp(-2j * math.pi * w)
    out = (math.log(2.0) - math.pi * t / 4.0) + np.log(0.5j) - 1j * math.pi * w
    out = out + np.log(1.0 - e_pos)
    qn = q2
    while True:
        out = out + math.log1p(-qn) + np.log(1.0 - qn * e_pos) + np.log(1.0 - qn * e_neg)
        # |qn e_neg| <= qn exp(2 pi t) since Im w < t
        if qn * max(1.0, float(np.max(np.abs(e_neg))) if w.size else 1.0) < 1e-18:
            break
        qn *= q2
    return out if out.ndim else complex(out)
