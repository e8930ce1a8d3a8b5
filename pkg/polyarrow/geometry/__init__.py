from .polytope import (
    Polytope, hull_minimal, vrep_to_hrep, hrep_to_vrep, linear_image, subspace_section,
)
from .oracles import gauge, contains, distance_to_span

__all__ = [
    "Polytope", "hull_minimal", "vrep_to_hrep", "hrep_to_vrep", "linear_image",
    "subspace_section", "gauge", "contains", "distance_to_span",
]
