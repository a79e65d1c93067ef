"""Volumes of convex hulls of two positioned convex bodies."""

from .constants import (
    CResult,
    V_star,
    c_quantity,
    constant_volume_predicate,
    contact_lengths,
    cylinder_ratio,
    max_cylinder_ratio,
    reflection_body_ratio,
    translation_volume,
)
from .placements import PairPlacement, VolumeProfile, convexity_defect, g_profile, pair_hull_volume
from .simplices import common_center_search, simplex_reflection, symmetricity_oracle

__all__ = [
    "CResult",
    "PairPlacement",
    "VolumeProfile",
    "V_star",
    "c_quantity",
    "common_center_search",
    "constant_volume_predicate",
    "contact_lengths",
    "convexity_defect",
    "cylinder_ratio",
    "g_profile",
    "max_cylinder_ratio",
    "pair_hull_volume",
    "reflection_body_ratio",
    "simplex_reflection",
    "symmetricity_oracle",
    "translation_volume",
]
