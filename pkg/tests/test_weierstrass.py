import cmath
import math
from fractions import Fraction

import numpy as np
import pytest

from dihedral_forge.periods import DCCW_ROOT, DE_ROOT
from dihedral_forge.quadrature import PathSegment, integrate_arc
from dihedral_forge.weierstrass import (INF, BranchPhaseError, BranchState, HalfPlaneForm,
                                        PoleError, classify_end, dccw_data, de_data, de_forms,
                                        dks_b, dks_data, eval_form, growth_rate, integrate_map,
                                        lopez_ros_rho, null_residual, omega_forms, sample_map,
                                        unit_normal)


def uhp_points(n=1000, seed=0, scale=4.0):
    rng = np.random.default_rng(seed)
    return rng.uniform(-scale, scale, n) + 1j * rng.uniform(0.05, scale, n)


def test_de_phi1_rational_value():
    phi1, _ = de_forms(2.0, 3.0, 0.0)
    z = Fraction(1, 2)
    exact = z * (4 - z * z) / ((1 - z * z) * (9 - z * z))
    assert exact == Fraction(2, 7)
    assert abs(phi1(0.5) - float(exact)) < 1e-15


@pytest.mark.parametrize("alpha", [0.0, 0.1, 0.37])
def test_de_forms_positive_on_interval(alpha):
    for f in de_forms(2.5, 3.5, alpha):
        v = f(0.5)
        assert v.real > 0 and abs(v.imag) < 1e-12 * abs(v)


def test_de_closed_form_at_alpha():
    a, b, al = 2.0, 3.0, 0.3
    phi1, _ = de_forms(a, b, al)
    z = 0.4 + 0.7j
    ref = (z ** (1 - al) * (1 - z * z) ** (al - 1) * (a * a - z * z) ** (1 - al)
           * (b * b - z * z) ** (al - 1))
    assert abs(phi1(z) - ref) < 1e-12 * abs(ref)


def test_pole_error():
    phi1, _ = de_forms(2.0, 3.0, 0.0)
    with pytest.raises(PoleError):
        phi1(1.0)


def test_branch_state_continuity():
    phi1, _ = de_forms(2.0, 3.0, 0.2)
    ts = np.linspace(0, math.pi, 400)
    path = 1.5 + np.exp(1j * ts)  # upper semicircle from 2.5 back to 0.5
    st = BranchState(phi1, path[0])
    vals = eval_form(phi1, path[1:], st)
    # continuation inside the closed upper half-plane agrees with the half-plane branch
    assert np.allclose(vals, phi1(np.where(path[1:].imag > 0, path[1:], path[1:].real)), rtol=1e-10)
    # a full loop around the root z = 1 multiplies by exp(2 pi i * exponent)
    loop = 1 + 0.5 * np.exp(1j * np.linspace(0, 2 * math.pi, 800))
    st = BranchState(phi1, loop[0])
    end = eval_form(phi1, loop[1:], st)[-1]
    e1 = dict(phi1.factors)[1.0]
    assert abs(end / phi1(loop[0]) - cmath.exp(2j * math.pi * e1)) < 1e-10


def test_residue_theorem_rational_forms():
    a, b = DE_ROOT
    for f in de_forms(a, b, 0.0):
        arc = f.arc_integrand(0.5, 0.5 + 0.25, 0.0)
        val = integrate_arc(arc, 0.5, 0.75, 0.0, 2 * math.pi, with_angle=True).value
        res = sum(f.residue(r) for r in (0.0, 1.0))
        assert abs(val - 2j * math.pi * res) < 1e-10 * max(1, abs(res))


def test_omega_g_equals_one():
    d = de_data(2.0, 3.0, 0.0)
    z = np.array([0.3 + 0.4j])
    w1, w2, w3 = omega_forms(d, z)
    G = d.gauss(z)
    assert np.allclose(w1, 0.5 * (1 / G - G) * w3)
    assert np.allclose(w2, 0.5j * (1 / G + G) * w3)


@pytest.mark.parametrize("family", ["de", "dccw", "dks"])
def test_null_identity(family):
    if family == "de":
        d, z = de_data(*DE_ROOT, 0.2, 1.7), uhp_points()
    elif family == "dccw":
        a, b = DCCW_ROOT
        d, z = dccw_data(a, b, b * b / a, 0.1), uhp_points(scale=20)
    else:
        d = dks_data(0.2, 0.22, 1j, 0.1)
        rng = np.random.default_rng(3)
        z = rng.uniform(0.01, 0.49, 1000) + 1j * rng.uniform(0.01, 0.49, 1000)
    assert np.max(null_residual(d, z)) < 1e-10
    v = d.forms_at(z)
    assert np.max(np.abs(v[:, 0] * v[:, 1] - v[:, 2] ** 2) / np.abs(v[:, 2]) ** 2) < 1e-10


def test_cross_evaluation_oracle():
    a, b = DE_ROOT
    rho = 1.9
    d = de_data(a, b, 0.15, rho)
    phi1, phi2 = de_forms(a, b, 0.15)
    z = uhp_points(20)
    w1, w2, w3 = omega_forms(d, z)
    assert np.allclose(w1, 0.5 * (phi2(z) / rho - rho * phi1(z)), rtol=1e-13)
    assert np.allclose(w2, 0.5j * (phi2(z) / rho + rho * phi1(z)), rtol=1e-13)


def test_integrate_map_trivial_and_reversal():
    d = de_data(2.0, 3.0, 0.0)
    assert np.all(integrate_map(d, []) == 0)
    seg = PathSegment.line(0.5j, 1.3 + 0.9j)
    there = integrate_map(d, [seg], 0.5j)
    back = integrate_map(d, [seg.reversed()], 1.3 + 0.9j)
    assert np.linalg.norm(there + back) < 1e-10


def test_de_alpha0_interval_in_xz_plane(solved):
    rec = solved("de", 0.0)
    p = rec.params
    d = de_data(p.a, p.b, 0.0, p.rho)
    disp = integrate_map(d, [PathSegment.line(0.1, 0.9)], 0.1)
    assert abs(disp[1]) < 1e-12 and abs(disp[0]) > 1e-3


def test_sample_map_normal_unit():
    d = de_data(2.0, 3.0, 0.1)
    s = sample_map(d, 1j, 0.5 + 0.5j)
    assert abs(np.linalg.norm(s.normal) - 1) < 1e-12
    assert np.allclose(unit_normal(np.array([0j])), [[0, 0, -1]])


def test_lopez_ros_examples():
    assert lopez_ros_rho(3 + 1j, 3 - 1j) == pytest.approx(1.0)
    assert lopez_ros_rho(-2, -8) == pytest.approx(2.0)
    with pytest.raises(BranchPhaseError):
        lopez_ros_rho(1.0, 1j)


def test_scaling_and_rotation_of_data():
    d = de_data(2.0, 3.0, 0.1)
    seg = [PathSegment.line(1j, 0.4 + 2j)]
    base = integrate_map(d, seg, 1j)
    assert np.allclose(integrate_map(d.scaled_height(2.5), seg, 1j), 2.5 * base, rtol=1e-12)
    t = math.pi / 7
    rot = integrate_map(d.rotated(t), seg, 1j)
    R = np.array([[math.cos(t), -math.sin(t), 0], [math.sin(t), math.cos(t), 0], [0, 0, 1]])
    assert np.linalg.norm(rot - R @ base) < 1e-9 * np.linalg.norm(base)


@pytest.mark.parametrize("n", [2, 3, 5, 8])
def test_de_end_at_infinity(n):
    e = classify_end(de_data(*DE_ROOT, 1.0 / n), INF)
    assert (e.g_order, e.dh_order, e.kind) == (n - 1, -(n + 1), "enneper")


def test_de_alpha0_ends():
    d = de_data(*DE_ROOT, 0.0)
    assert classify_end(d, INF).kind == "enneper"
    assert classify_end(d, INF).dh_order == -2
    a, b = DE_ROOT
    for p in (-b, -a, -1.0, 0.0, 1.0, a, b):
        assert classify_end(d, p).kind == "scherk"
    e = classify_end(d, a)
    assert e.g_order == 1 and e.dh_order == 0


def test_dccw_ends_catenoidal_and_rates():
    a, b = DCCW_ROOT
    c = b * b / a
    d = dccw_data(a, b, c, 1.0 / 6)
    for p in (-c, -a, a, c):
        assert classify_end(d, p).kind == "catenoidal"
    assert growth_rate(a, b, c, "a") == pytest.approx(growth_rate(a, b, c, "c"), rel=1e-13)


def test_growth_rate_examples():
    assert growth_rate(2, 3, 4, "a") == pytest.approx(-5 / 48)
    assert growth_rate(2, 2, 4, "a") == 0
    with pytest.raises(ValueError):
        growth_rate(2, 3, 4, "b")


def test_dks_end_scherk():
    d = dks_data(0.2, 0.22, 1j, 0.0)
    assert classify_end(d, 0.5j - 0.22j).kind == "scherk"


def test_dks_dh_real_on_axis_and_g_normalized():
    d = dks_data(0.3, 0.2, 1j, 0.1)
    v = d.dh(np.array([0.25 + 0j]))
    assert abs(v.imag[0]) < 1e-14 * abs(v[0])
    assert abs(d.gauss(np.array([0j]))[0] - 1) < 1e-12


def test_dks_reflection_symmetries():
    a, c, al = 0.27, 0.21, 0.12
    d = dks_data(a, c, 1j, al)
    rng = np.random.default_rng(7)
    z = rng.uniform(0.02, 0.48, 50) + 1j * rng.uniform(0.02, 0.48, 50)
    G, H = d.gauss, d.dh
    # reflection in Re z = 1/2: horizontal symmetry line
    w = 1 - np.conj(z)
    assert np.max(np.abs(G(w) * np.conj(G(z)) - 1)) < 1e-12
    assert np.max(np.abs(H(w) / np.conj(H(z)) - 1)) < 1e-12
    # reflection in Im z = 1/2: vertical plane at angle -pi alpha
    w = np.conj(z) + 1j
    phase = cmath.exp(-2j * math.pi * al)
    assert np.max(np.abs(G(w) / np.conj(G(z)) - phase)) < 1e-12
    assert np.max(np.abs(H(w) / np.conj(H(z)) - 1)) < 1e-12


@pytest.mark.parametrize("fraction", [0.2, 0.5, 0.8])
def test_circle_starting_on_a_zero(fraction):
    # at fraction 0.5 the circle around (1, 2) starts exactly on the zero of dh at b = 3
    from dihedral_forge.periods.contours import circle_period
    from dihedral_forge.weierstrass import dccw_forms
    dh = dccw_forms(2.0, 3.0, 4.0, 0.0)[2]
    pts = (-4.0, -2.0, -1.0, 1.0, 2.0, 4.0)
    val = circle_period(dh, 1.0, 2.0, pts, fraction)
    assert abs(val - 2j * math.pi * dh.residue(2.0)) < 1e-12
