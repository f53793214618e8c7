"""Geometric checks of a constructed piece: plane alignment, conformality,
orthogonal incidence, horizontal symmetry and the order-3 rotation of the
hexagon family."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..quadrature import PathSegment
from ..weierstrass import integrate_forms, integrate_map, null_residual, periods_to_position
from .mesh import SurfaceMesh
from .symmetry import fit_plane, nominal_planes


@dataclass
class PlaneReport:
    tag: str
    count: int
    fit_deviation: float       # max distance from the best-fit plane
    nominal_deviation: float   # max distance from the nominal plane
    normal: np.ndarray = field(repr=False, default=None)

    def relative(self, diameter: float) -> float:
        return max(self.fit_deviation, self.nominal_deviation) / diameter


def verify_plane_alignment(mesh: SurfaceMesh, tol: float = 1e-6) -> dict:
    """Per tag: distance of the tagged boundary vertices from their best-fit
    plane and from the nominal symmetry plane. Tags sharing a nominal plane
    (e.g. all edges tagged A) are tested together, so the report sees whether
    separate edges landed on one plane."""
    planes = nominal_planes(mesh)
    out = {}
    for tag, plane in planes.items():
        idx = mesh.tagged_vertices(tag)
        if tag in ("dr", "u"):
            idx = np.concatenate([mesh.tagged_vertices("dr"), mesh.tagged_vertices("u")])
        if len(idx) < 3:
            continue
        pts = mesh.vertices[idx]
        fit, dev = fit_plane(pts)
        out[tag] = PlaneReport(tag, len(idx), dev, float(np.max(np.abs(plane.distance(pts)))),
                               fit.normal)
    return out


def plane_angle(n1, n2) -> float:
    """Angle in [0, pi/2] between two planes given their normals."""
    c = abs(float(np.dot(n1, n2)) / (np.linalg.norm(n1) * np.linalg.norm(n2)))
    return math.acos(min(1.0, c))


def wedge_angle(mesh: SurfaceMesh) -> float:
    """Angle between the fitted planes of the two vertical boundary families."""
    rep = verify_plane_alignment(mesh)
    a, b = ("A", "B") if "A" in rep else ("dl", "dr")
    return plane_angle(rep[a].normal, rep[b].normal)


def parallel_planes_dks(mesh: SurfaceMesh) -> float:
    """Angle between the fitted planes through f(dr) and f(u) (zero when parallel)."""
    p1, _ = fit_plane(mesh.vertices[mesh.tagged_vertices("dr")])
    p2, _ = fit_plane(mesh.vertices[mesh.tagged_vertices("u")])
    return plane_angle(p1.normal, p2.normal)


def _local_step(data, z, dz, tol=1e-13):
    v = integrate_forms(data, [PathSegment.line(z, z + dz)], tol)
    return periods_to_position(v[0], v[1], v[2])


def conformality(data, samples, h: float = 1e-3) -> float:
    """max over samples of |E - G|/E and |F|/E from central differences of f."""
    worst = 0.0
    for z in samples:
        z = complex(z)
        fx = _local_step(data, z - h, 2 * h) / (2 * h)
        fy = _local_step(data, z - 1j * h, 2j * h) / (2 * h)
        E, G, F = fx @ fx, fy @ fy, fx @ fy
        worst = max(worst, abs(E - G) / E, abs(F) / E)
    return worst


def orthogonality(data, mesh: SurfaceMesh, samples_by_tag: dict, h: float = 1e-4,
                  inward: complex = 1j) -> float:
    """Largest angle (radians) between the inward conormal f(z + h inward) - f(z)
    at boundary samples and the normal of the nominal plane of their tag."""
    planes = nominal_planes(mesh)
    worst = 0.0
    for tag, zs in samples_by_tag.items():
        n = planes[tag].normal
        for z in zs:
            d = _local_step(data, complex(z), h * inward)
            worst = max(worst, plane_angle(d, n))
    return worst


def null_identity(data, samples) -> float:
    return float(np.max(null_residual(data, np.asarray(samples, dtype=complex))))


def horizontal_line_residual(mesh: SurfaceMesh, tags=None) -> float:
    """Largest height spread along each curve expected to be a horizontal
    symmetry line: the image of the imaginary axis (half-plane families) or
    the tagged ld, lu, r edges (torus family), relative to nothing (absolute)."""
    V = mesh.vertices
    if mesh.meta["family"] == "dks":
        worst = 0.0
        for t in tags or ("ld", "lu", "r"):
            idx = mesh.tagged_vertices(t)
            if len(idx):
                worst = max(worst, float(np.ptp(V[idx, 2])))
        return worst
    z = mesh.params
    on_axis = np.abs(z.real) < 1e-12
    if not np.any(on_axis):
        raise ValueError("the grid has no nodes on the imaginary axis")
    return float(np.ptp(V[on_axis, 2]))


def mobius_order3(a: float, c: float):
    """The automorphism of the upper half-plane with 1 -> c, a -> -c, c -> -a,
    as a real 2 x 2 matrix (z -> (p z + q)/(r z + s))."""
    src = np.array([1.0, a, c])
    dst = np.array([c, -c, -a])
    # p z + q - w r z - w s = 0 for the three pairs; null vector of a 3 x 4 system
    A = np.column_stack([src, np.ones(3), -dst * src, -dst])
    _, _, vt = np.linalg.svd(A)
    p, q, r, s = vt[-1]
    M = np.array([[p, q], [r, s]])
    if np.linalg.det(M) < 0:
        raise ValueError("the point triples have opposite orientation")
    return M / math.sqrt(np.linalg.det(M))


def kabsch(P, Q):
    """Rigid motion (R, t) minimizing |R P + t - Q|; returns R, t, max residual."""
    P, Q = np.asarray(P), np.asarray(Q)
    cp, cq = P.mean(axis=0), Q.mean(axis=0)
    H = (P - cp).T @ (Q - cq)
    U, _, Vt = np.linalg.svd(H)
    d = np.sign(np.linalg.det(Vt.T @ U.T))
    D = np.diag([1.0, 1.0, d])
    R = Vt.T @ D @ U.T
    t = cq - R @ cp
    res = float(np.max(np.linalg.norm(P @ R.T + t - Q, axis=1)))
    return R, t, res


@dataclass
class MobiusReport:
    fit_residual: float
    rotation_angle: float
    axis: np.ndarray
    orbit_return: float
    scale: float


def verify_mobius_rotation(data, samples, base: complex | None = None) -> MobiusReport:
    """Hexagon family: f(M z) = R f(z) + t for a rotation R of order 3.

    Positions are integrated from ``base`` along straight lines (the upper
    half-plane is convex). ``orbit_return`` is |R^3 x + (R^2 + R + 1) t - x|
    at the first sample relative to the sample spread.
    """
    p = data.params
    M = mobius_order3(p["a"], p["c"])
    base = complex(0.0, 1.0) if base is None else complex(base)

    def f(z):
        return integrate_map(data, [PathSegment.line(base, z)], base, tol=1e-12)

    zs = [complex(z) for z in samples]
    mz = [(M[0, 0] * z + M[0, 1]) / (M[1, 0] * z + M[1, 1]) for z in zs]
    P = np.array([f(z) for z in zs])
    Q = np.array([f(w) for w in mz])
    R, t, res = kabsch(P, Q)
    ang = math.acos(max(-1.0, min(1.0, (np.trace(R) - 1) / 2)))
    w, v = np.linalg.eig(R)
    axis = np.real(v[:, np.argmin(np.abs(w - 1))])
    x = P[0]
    y = x
    for _ in range(3):
        y = R @ y + t
    scale = float(np.max(np.ptp(P, axis=0)))
    return MobiusReport(res / scale, ang, axis, float(np.linalg.norm(y - x)) / scale, scale)
