import math

import mpmath
import numpy as np
import pytest

from dihedral_forge.quadrature import (PathSegment, QuadratureError, integrate_arc,
                                       integrate_halfline, integrate_path, integrate_segment)


def one(z):
    return np.ones_like(z)


def test_beta_half_half():
    r = integrate_segment(one, 0.0, 1.0, -0.5, -0.5)
    assert abs(r.value - math.pi) < 1e-12
    assert r.error_estimate >= 0 and r.evaluations > 0


def test_interval_length():
    assert abs(integrate_segment(one, 0.0, 1.0).value - 1.0) < 1e-14


@pytest.mark.parametrize("al", [1 / 3, 0.05, 0.9])
def test_euler_reflection(al):
    r = integrate_segment(one, 0.0, 1.0, al - 1, -al)
    assert abs(r.value - math.pi / math.sin(math.pi * al)) < 1e-10


def test_beta_against_mpmath():
    r = integrate_segment(lambda z: np.exp(z), 0.0, 1.0, -0.7, 0.3)
    # int_0^1 e^t t^(a-1) (1-t)^(b-a-1) dt = B(a, b-a) 1F1(a; b; 1)
    ref = mpmath.beta(0.3, 1.3) * mpmath.hyp1f1(0.3, 1.6, 1)
    assert abs(r.value - complex(ref)) < 1e-11


def test_rejects_nonintegrable():
    with pytest.raises(ValueError):
        integrate_segment(one, 0.0, 1.0, -1.0, 0.0)


def test_full_circle_residue():
    r = integrate_arc(lambda z: 1 / z, 0.0, 1.0, 0.0, 2 * math.pi)
    assert abs(r.value - 2j * math.pi) < 1e-12


def test_arc_chord():
    a, b = 0.3, 2.1
    r = integrate_arc(one, 1 + 1j, 0.7, a, b)
    z = lambda t: 1 + 1j + 0.7 * np.exp(1j * t)
    assert abs(r.value - (z(b) - z(a))) < 1e-13


def test_arc_rejects_near_singularity():
    with pytest.raises(ValueError):
        integrate_arc(lambda z: 1 / z, 1.0, 1.0, 3.0, 3.3, singularities=[0.0], margin=1e-3)


def test_halfline_power():
    r = integrate_halfline(lambda t: t ** -2.0, 1.0, -2.0)
    assert abs(r.value - 1.0) < 1e-12


def test_halfline_substitution_oracle():
    # t = 1/s^2 turns the integral into int_0^1 2 ds / sqrt(1 - s^4) = 2 K(-1)
    r = integrate_halfline(lambda t: 1 / (np.sqrt(t) * np.sqrt(t + 1)), 1.0, -1.5, exp_start=-0.5)
    ref = 2 * mpmath.ellipk(-1)
    assert abs(r.value - float(ref)) < 1e-11


def test_halfline_rejects_slow_decay():
    with pytest.raises(ValueError):
        integrate_halfline(lambda t: 1 / t, 1.0, -1.0)


def test_linearity_and_reversal():
    rng = np.random.default_rng(1)
    f = lambda z: np.exp(1j * z) / (z + 3)
    base = integrate_segment(f, 0.2j, 1.5 + 0.4j).value
    for _ in range(5):
        c = complex(*rng.normal(size=2))
        assert abs(integrate_segment(lambda z: c * f(z), 0.2j, 1.5 + 0.4j).value - c * base) < 1e-11
    assert abs(integrate_segment(f, 1.5 + 0.4j, 0.2j).value + base) < 1e-12


def test_split_additivity():
    f = lambda z: np.cos(z) * z
    whole = integrate_segment(f, 0.0, 2.0 + 1j).value
    m = 0.7 + 0.35j
    assert abs(integrate_segment(f, 0.0, m).value + integrate_segment(f, m, 2.0 + 1j).value
               - whole) < 1e-12


def test_vector_valued():
    r = integrate_segment(lambda z: np.stack([np.ones_like(z), z], axis=-1), 0.0, 2.0)
    assert np.allclose(r.value, [2.0, 2.0], atol=1e-13)


def test_path_reversed_cancels():
    segs = [PathSegment.line(0, 1 + 1j), PathSegment.arc(0, 2.0, 0.1, 1.0)]
    f = lambda z: z ** 2
    fwd = integrate_path(f, segs).value
    back = integrate_path(f, [s.reversed() for s in reversed(segs)]).value
    assert abs(fwd + back) < 1e-12


def test_budget_failure_is_explicit():
    with pytest.raises(QuadratureError) as exc:
        integrate_segment(lambda z: np.sin(400 * z), 0.0, 30.0, tol=1e-14, budget=200)
    assert exc.value.partial is not None
