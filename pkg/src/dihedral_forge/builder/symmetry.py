"""Symmetry planes of a fundamental piece and extension by reflections."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from .mesh import SurfaceMesh


@dataclass(frozen=True)
class Plane:
    """{x : normal . x = offset}, |normal| = 1."""

    normal: np.ndarray
    offset: float

    def distance(self, pts) -> np.ndarray:
        return np.asarray(pts) @ self.normal - self.offset

    def reflection(self) -> np.ndarray:
        """4 x 4 affine matrix of the reflection in the plane."""
        n = np.asarray(self.normal, dtype=float)
        M = np.eye(4)
        M[:3, :3] -= 2.0 * np.outer(n, n)
        M[:3, 3] = 2.0 * self.offset * n
        return M


def fit_plane(pts) -> tuple[Plane, float]:
    """Least-squares plane through the points and the largest distance from it."""
    pts = np.asarray(pts, dtype=float)
    if len(pts) < 3:
        raise ValueError("need at least three points to fit a plane")
    c = pts.mean(axis=0)
    _, _, vt = np.linalg.svd(pts - c)
    n = vt[-1] / np.linalg.norm(vt[-1])
    p = Plane(n, float(n @ c))
    return p, float(np.max(np.abs(p.distance(pts))))


def vertical_plane(pts, angle: float) -> Plane:
    """Vertical plane containing the horizontal direction e^{i angle}, placed
    through the centroid of ``pts``."""
    n = np.array([-math.sin(angle), math.cos(angle), 0.0])
    return Plane(n, float(n @ np.asarray(pts).mean(axis=0)))


def horizontal_plane(pts) -> Plane:
    return Plane(np.array([0.0, 0.0, 1.0]), float(np.asarray(pts)[:, 2].mean()))


@dataclass
class SymmetryGroup:
    """Group generated by reflections (affine 4 x 4 matrices).

    ``order`` is the dihedral order n (None for the translation case alpha = 0);
    ``max_copies`` caps the enumeration, which matters only for infinite groups.
    """

    generators: list
    order: int | None = None
    horizontal: bool = False
    max_copies: int = 64
    names: list = field(default_factory=list)

    def elements(self) -> list:
        """Distinct group elements, breadth-first in word length, up to max_copies."""
        found = [np.eye(4)]
        frontier = [np.eye(4)]
        while frontier and len(found) < self.max_copies:
            nxt = []
            for g in frontier:
                for s in self.generators:
                    h = s @ g
                    if not any(np.allclose(h, f, atol=1e-9 * (1 + np.abs(f).max())) for f in found):
                        found.append(h)
                        nxt.append(h)
                        if len(found) >= self.max_copies:
                            return found
            frontier = nxt
        return found


def apply(mesh: SurfaceMesh, M: np.ndarray) -> SurfaceMesh:
    v = mesh.vertices @ M[:3, :3].T + M[:3, 3]
    tris = mesh.triangles if np.linalg.det(M[:3, :3]) > 0 else mesh.triangles[:, ::-1]
    return SurfaceMesh(v, tris.copy(), {k: e.copy() for k, e in mesh.boundary.items()},
                       None, None, dict(mesh.meta))


def weld(meshes, tol: float) -> tuple[SurfaceMesh, float]:
    """Union of meshes with vertices closer than ``tol`` merged.

    Returns the welded mesh and the largest distance between merged vertices.
    """
    verts = np.concatenate([m.vertices for m in meshes])
    offs = np.cumsum([0] + [len(m.vertices) for m in meshes])
    tree = cKDTree(verts)
    pairs = tree.query_pairs(tol, output_type="ndarray")
    parent = np.arange(len(verts))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i
    for i, j in pairs:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)
    roots = np.array([find(i) for i in range(len(verts))])
    uniq, new = np.unique(roots, return_inverse=True)
    gap = float(np.max(np.linalg.norm(verts - verts[roots], axis=1))) if len(verts) else 0.0
    tris, boundary = [], {}
    for m, o in zip(meshes, offs[:-1]):
        tris.append(new[m.triangles + o])
        for k, e in m.boundary.items():
            boundary.setdefault(k, []).append(new[e + o])
    tris = np.concatenate(tris)
    keep = (tris[:, 0] != tris[:, 1]) & (tris[:, 1] != tris[:, 2]) & (tris[:, 0] != tris[:, 2])
    boundary = {k: np.unique(np.sort(np.concatenate(v), axis=1), axis=0)
                for k, v in boundary.items()}
    return SurfaceMesh(verts[uniq], tris[keep], boundary, None, None, dict(meshes[0].meta)), gap


def extend_by_symmetry(mesh: SurfaceMesh, group: SymmetryGroup,
                       weld_tol: float | None = None) -> SurfaceMesh:
    """Union of the images of ``mesh`` under the group, welded within
    1e-6 of the mesh diameter. meta['copies'] and meta['weld_gap'] record
    the copy count and the largest merged-vertex distance."""
    elems = group.elements()
    tol = weld_tol if weld_tol is not None else 1e-6 * max(mesh.diameter, 1e-300)
    out, gap = weld([apply(mesh, g) for g in elems], tol)
    out.meta.update({"copies": len(elems), "weld_gap": gap, "weld_tol": tol})
    return out


# --- planes of the three families ------------------------------------------

def nominal_planes(mesh: SurfaceMesh) -> dict:
    """Nominal symmetry planes from the boundary tags and the wedge angle.

    Half-plane families: A is vertical along the x-axis and B vertical at
    angle -pi alpha (DE) or +pi alpha (DCCW). Torus family: dl in the plane
    along the x-axis, dr and u at angle -pi alpha, ld, lu, r horizontal.
    """
    fam = mesh.meta["family"]
    al = float(mesh.meta["params"]["alpha"])
    tv = mesh.tagged_vertices
    V = mesh.vertices
    out = {}
    if fam in ("de", "dccw"):
        sgn = -1.0 if fam == "de" else 1.0
        out["A"] = vertical_plane(V[tv("A")], 0.0)
        out["B"] = vertical_plane(V[tv("B")], sgn * math.pi * al)
    else:
        out["dl"] = vertical_plane(V[tv("dl")], 0.0)
        v1 = np.concatenate([tv("dr"), tv("u")])
        out["dr"] = out["u"] = vertical_plane(V[v1], -math.pi * al)
        for t in ("ld", "lu", "r"):
            if len(tv(t)):
                out[t] = horizontal_plane(V[tv(t)])
    return out


def dihedral_order(alpha: float) -> int | None:
    if alpha == 0:
        return None
    n = round(1.0 / alpha)
    if abs(n * alpha - 1.0) > 1e-9:
        raise ValueError(f"alpha={alpha} is not 1/n; the extension does not close")
    return int(n)


def family_group(mesh: SurfaceMesh, symmetry: str = "full", max_copies: int | None = None):
    """Symmetry group used for 'fundamental', 'wedge' or 'full' meshes.

    wedge: the piece and its mirror image in plane A (half-plane families) or
    in the horizontal plane through f(r) (torus family). full: the 2n images
    under the reflections in the two vertical planes (capped for alpha = 0).
    """
    al = float(mesh.meta["params"]["alpha"])
    planes = nominal_planes(mesh)
    fam = mesh.meta["family"]
    if symmetry == "fundamental":
        return SymmetryGroup([], 1)
    if symmetry == "wedge":
        first = planes["A"] if fam != "dks" else planes["r"]
        return SymmetryGroup([first.reflection()], 1, horizontal=fam == "dks", max_copies=2)
    if symmetry != "full":
        raise ValueError(f"unknown symmetry {symmetry!r}")
    n = dihedral_order(al)
    if fam == "dks":
        gens = [planes["r"].reflection(), planes["dl"].reflection(), planes["dr"].reflection()]
        cap = 4 * n if n else (max_copies or 8)
    else:
        gens = [planes["A"].reflection(), planes["B"].reflection()]
        cap = 2 * n if n else (max_copies or 6)
    return SymmetryGroup(gens, n, fam == "dks", max_copies=max_copies or cap, names=list(planes))
