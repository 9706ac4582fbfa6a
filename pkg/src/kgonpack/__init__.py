"""Smallest convex k-gons containing n non-overlapping unit disks."""
from .bounds import kgon_bound, tightness, wegner_bound
from .constructions import construct, theorem6_reference_areas, verify_optimal
from .errors import GeometryError, KgonError
from .geom_core import ConvexPolygon, HalfPlane, convex_hull, halfplane_intersection
from .optimizer import SolveConfig, solve
from .packing import UnitDiskPacking, classify, generate_wegner, hull_metrics, tangent_polygon
from .trisectrix import trisectrix_point

__all__ = [
    "ConvexPolygon",
    "GeometryError",
    "HalfPlane",
    "KgonError",
    "SolveConfig",
    "UnitDiskPacking",
    "classify",
    "construct",
    "convex_hull",
    "generate_wegner",
    "halfplane_intersection",
    "hull_metrics",
    "kgon_bound",
    "solve",
    "tangent_polygon",
    "theorem6_reference_areas",
    "tightness",
    "trisectrix_point",
    "verify_optimal",
    "wegner_bound",
]
