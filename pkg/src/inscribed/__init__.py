"""Extremal volumes of inscribed polytopes and of hulls of two convex bodies."""

from .geom_kernel import GeometryError, OrientedComplex, VertexPolytope, convex_hull, polytope_volume
from .property_z import ZReport, bh_step, local_optimize, z_residual

__version__ = "0.1.0"

__all__ = [
    "GeometryError",
    "OrientedComplex",
    "VertexPolytope",
    "ZReport",
    "bh_step",
    "convex_hull",
    "local_optimize",
    "polytope_volume",
    "z_residual",
]
