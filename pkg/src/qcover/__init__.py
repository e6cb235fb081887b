"""Smallest Q-covers, EHZ capacities of polygon products and their area certificates."""

from .capacity import capacity, is_q_cover, monotonicity_check, systolic_ratio
from .certificates import (
    caps,
    croissant_check,
    enclosed_area,
    min_tight_hull,
    quadrilateral_certificate,
    steiner_symmetrize,
    triangle_contour_certificate,
    winding_number,
)
from .decomposition import decompose, snap_to_normal_directions, verify_minkowski_fit
from .geometry import AffineMap, ConvexPolygon, GeometryError, max_inscribed_homothet, regular_polygon
from .norm import ClosedPolyline, q_length
from .normals import NormalShape, enumerate_normal_shapes
from .search import Placement, SearchConfig, search_min_cover

__all__ = [
    "AffineMap", "ClosedPolyline", "ConvexPolygon", "GeometryError", "NormalShape", "Placement",
    "SearchConfig", "capacity", "caps", "croissant_check", "decompose", "enclosed_area",
    "enumerate_normal_shapes", "is_q_cover", "max_inscribed_homothet", "min_tight_hull",
    "monotonicity_check", "q_length", "quadrilateral_certificate", "regular_polygon",
    "search_min_cover", "snap_to_normal_directions", "steiner_symmetrize", "systolic_ratio",
    "triangle_contour_certificate", "verify_minkowski_fit", "winding_number",
]
