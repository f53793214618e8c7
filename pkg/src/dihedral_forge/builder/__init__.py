"""Meshing of the fundamental piece, symmetric extension and geometric checks."""
from .domain import (DEFAULT_PUNCTURE_RADIUS, FundamentalDomain, Grid, dccw_plane_groups,
                     de_plane_groups, domain_for, quarter_torus_domain, sample_domain,
                     upper_half_plane_domain)
from .mesh import SurfaceMesh, build_fundamental_piece, thread_count
from .symmetry import (Plane, SymmetryGroup, dihedral_order, extend_by_symmetry, family_group,
                       fit_plane, nominal_planes, weld)
from .verify import (conformality, horizontal_line_residual, kabsch, mobius_order3,
                     null_identity, orthogonality, parallel_planes_dks, plane_angle,
                     verify_mobius_rotation, verify_plane_alignment, wedge_angle)


def data_for_record(rec):
    """Weierstrass data of a solved record."""
    from ..weierstrass import dccw_data, de_data, dks_data
    p = rec.params
    if rec.family == "de":
        return de_data(p.a, p.b, p.alpha, p.rho)
    if rec.family == "dccw":
        return dccw_data(p.a, p.b, p.c, p.alpha)
    return dks_data(p.a, p.c, p.tau, p.alpha)


def build_mesh(rec, resolution: int = 32, symmetry: str = "fundamental",
               puncture_radius: float = DEFAULT_PUNCTURE_RADIUS):
    data = data_for_record(rec)
    dom = domain_for(data)
    grid = sample_domain(dom, resolution, puncture_radius)
    mesh = build_fundamental_piece(data, dom, grid)
    if symmetry == "fundamental":
        return mesh
    return extend_by_symmetry(mesh, family_group(mesh, symmetry))


__all__ = [n for n in dir() if not n.startswith("_")]
