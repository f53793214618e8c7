"""Integration of the minimal map over a grid and the resulting triangle mesh."""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..quadrature import PathSegment
from ..weierstrass import integrate_forms, periods_to_position
from .domain import Grid, _seg_dist

MESH_TOL = 1e-11


def thread_count() -> int:
    """Worker count from DIHEDRAL_FORGE_THREADS (default 1)."""
    try:
        return max(1, int(os.environ.get("DIHEDRAL_FORGE_THREADS", "1")))
    except ValueError:
        return 1


@dataclass
class SurfaceMesh:
    """Triangle mesh with tagged boundary edges.

    ``boundary`` maps a tag to an (m, 2) array of vertex index pairs;
    ``params`` holds the parameter-plane preimage of each vertex (NaN for
    vertices created by symmetry), ``gauss`` the Gauss map value.
    """

    vertices: np.ndarray
    triangles: np.ndarray
    boundary: dict = field(default_factory=dict)
    params: np.ndarray | None = None
    gauss: np.ndarray | None = None
    meta: dict = field(default_factory=dict)

    @property
    def diameter(self) -> float:
        v = self.vertices
        return float(np.linalg.norm(v.max(axis=0) - v.min(axis=0))) if len(v) else 0.0

    def tagged_vertices(self, tag) -> np.ndarray:
        e = self.boundary.get(tag)
        if e is None or len(e) == 0:
            return np.zeros(0, dtype=int)
        return np.unique(np.asarray(e).ravel())

    def triangle_areas(self) -> np.ndarray:
        v = self.vertices[self.triangles]
        return 0.5 * np.linalg.norm(np.cross(v[:, 1] - v[:, 0], v[:, 2] - v[:, 0]), axis=1)

    def euler_characteristic(self) -> int:
        t = self.triangles
        e = np.sort(np.concatenate([t[:, [0, 1]], t[:, [1, 2]], t[:, [2, 0]]]), axis=1)
        n_edges = len(np.unique(e, axis=0))
        used = len(np.unique(t))
        return used - n_edges + len(t)

    def boundary_edge_count(self) -> int:
        t = self.triangles
        e = np.sort(np.concatenate([t[:, [0, 1]], t[:, [1, 2]], t[:, [2, 0]]]), axis=1)
        _, counts = np.unique(e, axis=0, return_counts=True)
        return int(np.sum(counts == 1))


def _edge_integral(data, za, zb, tol):
    return integrate_forms(data, [PathSegment.line(za, zb)], tol)


def edge_integrals(data, grid: Grid, edges, tol: float = MESH_TOL):
    flat = grid.points.ravel()
    jobs = [(flat[k], flat[l]) for k, l in edges]
    with ThreadPoolExecutor(max_workers=thread_count()) as ex:
        return list(ex.map(lambda p: _edge_integral(data, p[0], p[1], tol), jobs))


def build_fundamental_piece(data, domain, grid: Grid, tol: float = MESH_TOL,
                            check_cycles: bool = False) -> SurfaceMesh:
    """Mesh of f over the grid: tree-path integration, two triangles per cell.

    With ``check_cycles`` every non-tree edge is integrated as well and the
    largest mismatch |f(l) - f(k) - Re int_k^l| is stored in
    meta['cycle_residual'] (zero up to quadrature error on a period-free domain).
    """
    m = grid.n + 1
    flat = grid.points.ravel()
    vflat = grid.valid.ravel()
    tree = grid.tree_edges
    ints = edge_integrals(data, grid, tree, tol)
    pos = np.full((m * m, 3), np.nan)
    pos[grid.root] = 0.0
    for (k, l), v in zip(tree, ints):
        pos[l] = pos[k] + periods_to_position(v[0], v[1], v[2])
    meta = {"family": data.family, "params": dict(data.params), "rho": data.rho,
            "kind": domain.kind, "resolution": grid.n}
    if check_cycles:
        tree_set = set(tree)
        extra = [e for e in grid.edges() if e not in tree_set]
        vals = edge_integrals(data, grid, extra, tol)
        res = [np.linalg.norm(pos[l] - pos[k] - periods_to_position(v[0], v[1], v[2]))
               for (k, l), v in zip(extra, vals)]
        meta["cycle_residual"] = float(max(res)) if res else 0.0

    # compact vertex numbering
    idx = np.full(m * m, -1)
    keep = np.flatnonzero(vflat & np.all(np.isfinite(pos), axis=1))
    idx[keep] = np.arange(len(keep))
    tris = []
    for j in range(grid.n):
        for i in range(grid.n):
            k00, k10, k01, k11 = j * m + i, j * m + i + 1, (j + 1) * m + i, (j + 1) * m + i + 1
            if min(idx[k00], idx[k10], idx[k01], idx[k11]) < 0:
                continue
            lo, hi = flat[k00], flat[k11]
            if any(_cell_hits(p, lo, hi, grid.radius) for p in domain.punctures):
                continue
            tris.append((idx[k00], idx[k10], idx[k11]))
            tris.append((idx[k00], idx[k11], idx[k01]))
    tris = np.array(tris, dtype=int).reshape(-1, 3)

    # tagged boundary edges: mesh edges used by one triangle whose midpoint has a tag
    boundary: dict = {}
    if len(tris):
        e = np.sort(np.concatenate([tris[:, [0, 1]], tris[:, [1, 2]], tris[:, [2, 0]]]), axis=1)
        uniq, counts = np.unique(e, axis=0, return_counts=True)
        zpar = flat[keep]
        for u, v in uniq[counts == 1]:
            tag = domain.boundary((zpar[u] + zpar[v]) / 2) if domain.boundary else None
            boundary.setdefault(tag if tag is not None else "cut", []).append((u, v))
    boundary = {k: np.array(v, dtype=int) for k, v in boundary.items()}
    zk = flat[keep]
    with np.errstate(all="ignore"):
        try:
            gauss = np.asarray(data.gauss(zk))
        except ValueError:
            gauss = None
    return SurfaceMesh(pos[keep], tris, boundary, zk, gauss, meta)


def _cell_hits(p, lo, hi, r) -> bool:
    dx = max(lo.real - p.real, p.real - hi.real, 0.0)
    dy = max(lo.imag - p.imag, p.imag - hi.imag, 0.0)
    return dx * dx + dy * dy < r * r


def segment_clear(p, za, zb, r) -> bool:
    return _seg_dist(p, za, zb) >= r
