from .generation import (
    ArrowCatalog, CatalogEntry, grid_values, grid_points, gen_spaces, unit_sphere_points,
    arrow_candidates, symmetry_group, gen_double_arrows, arrow_grid,
)
from .matching import MatchResult, match_arrow, norming_pairs, norming_arrow

__all__ = [
    "ArrowCatalog", "CatalogEntry", "grid_values", "grid_points", "gen_spaces",
    "unit_sphere_points", "arrow_candidates", "symmetry_group", "gen_double_arrows",
    "arrow_grid", "MatchResult", "match_arrow", "norming_pairs", "norming_arrow",
]
