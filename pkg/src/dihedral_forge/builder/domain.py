"""Parameter domains, structured grids and spanning integration trees."""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

import numpy as np

DEFAULT_PUNCTURE_RADIUS = 1e-2


@dataclass(frozen=True)
class FundamentalDomain:
    """A rectangle [x0, x1] x [y0, y1] in the parameter plane with punctures.

    ``kind`` is 'upper-half-plane' or 'quarter-torus'. ``boundary`` maps a
    boundary point to a tag (or None for truncation edges); ``punctures``
    are finite points excluded by disks.
    """

    kind: str
    box: tuple
    punctures: tuple = ()
    base: complex = 0j
    boundary: object = None
    meta: dict = field(default_factory=dict)
    grading: float = 0.0

    def axes(self, n: int):
        """Node coordinates along x and y. With grading g > 0 the nodes are
        sinh-stretched toward x = mid and y = y0, refining near the branch points."""
        x0, x1, y0, y1 = self.box
        u = np.linspace(-1.0, 1.0, n + 1)
        v = np.linspace(0.0, 1.0, n + 1)
        g = self.grading
        if g > 0:
            u = np.sinh(g * u) / math.sinh(g)
            v = np.sinh(g * v) / math.sinh(g)
        xs = 0.5 * (x0 + x1) + 0.5 * (x1 - x0) * u
        xs[0], xs[-1] = x0, x1
        ys = y0 + (y1 - y0) * v
        ys[-1] = y1
        return xs, ys

    def __post_init__(self):
        x0, x1, y0, y1 = self.box
        if not (x0 < x1 and y0 < y1):
            raise ValueError("degenerate domain box")
        b = complex(self.base)
        if not (x0 < b.real < x1 and y0 < b.imag < y1):
            raise ValueError("base point must be interior")


@dataclass
class Grid:
    """Structured (n+1) x (n+1) grid with validity mask and an integration tree.

    ``points`` is indexed [j, i] (row j = height); flat index k = j (n+1) + i.
    ``parent[k]`` is the tree predecessor (-1 at the root and at invalid nodes).
    """

    domain: FundamentalDomain
    n: int
    points: np.ndarray
    valid: np.ndarray
    parent: np.ndarray
    order: list
    root: int
    radius: float

    @property
    def tree_edges(self):
        return [(int(self.parent[k]), k) for k in self.order if self.parent[k] >= 0]

    def edges(self):
        """All admissible grid edges (k, l) with l the right or upper neighbour."""
        m = self.n + 1
        out = []
        flat = self.points.ravel()
        for j in range(m):
            for i in range(m):
                k = j * m + i
                for l in ((k + 1) if i < self.n else None, (k + m) if j < self.n else None):
                    if l is not None and _edge_ok(flat[k], flat[l], self.valid.ravel()[k],
                                                  self.valid.ravel()[l], self.domain, self.radius):
                        out.append((k, l))
        return out


def _seg_dist(p, a, b) -> float:
    d = b - a
    t = 0.0 if d == 0 else min(1.0, max(0.0, ((p - a) * d.conjugate()).real / abs(d) ** 2))
    return abs(a + t * d - p)


def _edge_ok(za, zb, va, vb, domain, radius) -> bool:
    if not (va and vb):
        return False
    return all(_seg_dist(p, za, zb) >= radius for p in domain.punctures)


def sample_domain(domain: FundamentalDomain, resolution: int,
                  puncture_radius: float = DEFAULT_PUNCTURE_RADIUS) -> Grid:
    """Grid of (resolution + 1)^2 nodes, nodes inside puncture disks removed, and
    a breadth-first spanning tree from the node nearest the base point whose
    edges keep a distance puncture_radius from every puncture."""
    if resolution < 8:
        raise ValueError("resolution must be at least 8")
    if puncture_radius <= 0:
        raise ValueError("puncture radius must be positive")
    P = [complex(p) for p in domain.punctures]
    for i, p in enumerate(P):
        for q in P[i + 1:]:
            if abs(p - q) < 2 * puncture_radius:
                raise ValueError(f"puncture disks around {p} and {q} overlap")
    n = int(resolution)
    xs, ys = domain.axes(n)
    pts = xs[None, :] + 1j * ys[:, None]
    valid = np.ones(pts.shape, dtype=bool)
    for p in P:
        valid &= np.abs(pts - p) >= puncture_radius
    m = n + 1
    flat, vflat = pts.ravel(), valid.ravel()
    dist = np.where(vflat, np.abs(flat - complex(domain.base)), np.inf)
    root = int(np.argmin(dist))
    parent = np.full(m * m, -1)
    seen = np.zeros(m * m, dtype=bool)
    seen[root] = True
    order = [root]
    queue = deque([root])
    while queue:
        k = queue.popleft()
        j, i = divmod(k, m)
        for dj, di in ((0, 1), (1, 0), (0, -1), (-1, 0)):
            jj, ii = j + dj, i + di
            if 0 <= jj < m and 0 <= ii < m:
                l = jj * m + ii
                if not seen[l] and _edge_ok(flat[k], flat[l], vflat[k], vflat[l], domain,
                                            puncture_radius):
                    seen[l] = True
                    parent[l] = k
                    order.append(l)
                    queue.append(l)
    valid = valid & seen.reshape(valid.shape)
    return Grid(domain, n, pts, valid, parent, order, root, float(puncture_radius))


# --- the three families ---------------------------------------------------

def _interval_tagger(groups):
    """Tag a real point by the open interval (lo, hi) containing it."""
    def tag(z):
        z = complex(z)
        if abs(z.imag) > 1e-12:
            return None
        for name, intervals in groups.items():
            for lo, hi in intervals:
                if lo < z.real < hi:
                    return name
        return None
    return tag


def de_plane_groups(a: float, b: float):
    """Intervals of the real axis whose images share a vertical plane."""
    return {"A": ((-math.inf, -b), (-a, -1.0), (0.0, 1.0), (a, b)),
            "B": ((-b, -a), (-1.0, 0.0), (1.0, a), (b, math.inf))}


def dccw_plane_groups(a: float, c: float):
    return {"A": ((-c, -a), (-1.0, 1.0), (a, c)),
            "B": ((-math.inf, -c), (-a, -1.0), (1.0, a), (c, math.inf))}


def upper_half_plane_domain(data) -> FundamentalDomain:
    """Truncated half-plane [-L, L] x [0, L], L = largest finite branch point + 2."""
    finite = [float(p) for p in data.punctures if math.isfinite(abs(complex(p)))]
    L = max(abs(p) for p in finite) + 2.0
    p = data.params
    if data.family == "de":
        groups = de_plane_groups(p["a"], p["b"])
    elif data.family == "dccw":
        groups = dccw_plane_groups(p["a"], p["c"])
    else:
        raise ValueError(f"no half-plane domain for family {data.family!r}")
    inner = min(abs(q) for q in finite if q != 0.0)
    grading = float(np.arcsinh(L / inner)) if L / inner > 2 else 0.0
    return FundamentalDomain("upper-half-plane", (-L, L, 0.0, L), tuple(complex(q) for q in finite),
                             complex(0.0, L / 2), _interval_tagger(groups),
                             {"groups": groups, "family": data.family}, grading)


def quarter_torus_domain(data) -> FundamentalDomain:
    """0 <= Re z <= 1/2, 0 <= Im z <= Im(tau)/2 with the ends 1/2 - a and tau/2 - ic.

    Boundary pieces: dl = [0, 1/2 - a], dr = [1/2 - a, 1/2] (bottom), r (right),
    u (top), lu and ld (left edge above and below the end tau/2 - ic).
    """
    p = data.params
    t = complex(p["tau"]).imag
    a, c = p["a"], p["c"]
    ye = t / 2 - c

    def tag(z):
        z = complex(z)
        x, y = z.real, z.imag
        eps = 1e-12
        if abs(y) < eps and 0 < x < 0.5:
            return "dl" if x < 0.5 - a else "dr"
        if abs(y - t / 2) < eps and 0 < x < 0.5:
            return "u"
        if abs(x - 0.5) < eps and 0 < y < t / 2:
            return "r"
        if abs(x) < eps and 0 < y < t / 2:
            return "ld" if y < ye else "lu"
        return None

    return FundamentalDomain("quarter-torus", (0.0, 0.5, 0.0, t / 2),
                             (complex(0.5 - a), complex(0.0, ye)), complex(0.25, t / 4), tag,
                             {"family": "dks"})


def domain_for(data) -> FundamentalDomain:
    return quarter_torus_domain(data) if data.family == "dks" else upper_half_plane_domain(data)
