from .operator import (
    Operator, op_norm, isometry_constants, conorm, least_isometry_constant, is_isometry,
    normalize_isometry,
)
from .double_arrow import (
    ArrowClass, DoubleArrow, classify, compose, certify_compose, scale_to_contractive,
    certify_scale, exactify_projection, certify_exactify, commutativity_defects,
    eps_commutativity,
)
from .distance import DistanceBound, candidate_maps, intertwiner, arrow_distance_search, arrow_distance_upper
from .perturbation import perturb_projection, scaled_perturbation

__all__ = [
    "Operator", "op_norm", "isometry_constants", "conorm", "least_isometry_constant",
    "is_isometry", "normalize_isometry", "ArrowClass", "DoubleArrow", "classify", "compose",
    "certify_compose", "scale_to_contractive", "certify_scale", "exactify_projection",
    "certify_exactify", "commutativity_defects", "eps_commutativity", "DistanceBound",
    "candidate_maps", "intertwiner", "arrow_distance_search", "arrow_distance_upper", "perturb_projection",
    "scaled_perturbation",
]
