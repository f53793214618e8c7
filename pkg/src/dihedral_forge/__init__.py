"""Dihedral wedges of minimal surfaces: Weierstrass data, period problems and meshes."""
__version__ = "0.1.0"

from . import quadrature, theta  # noqa: E402,F401
