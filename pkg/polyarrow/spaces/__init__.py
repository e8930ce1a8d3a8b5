from .normed_space import (
    NormedSpace, SUM_1, SUM_INF, norm, column_norms, map_norm, l1, linf, real_line,
    from_vertices, dual_space, direct_sum, quotient_space, quotient_data, section_space,
)
from .framing import framing_delta, framing_candidates, l1_framing
from .isometries import vertex_matchings, isometries_between, distortion, bm_search, bm_upper

__all__ = [
    "NormedSpace", "SUM_1", "SUM_INF", "norm", "column_norms", "map_norm", "l1", "linf",
    "real_line", "from_vertices", "dual_space", "direct_sum", "quotient_space",
    "quotient_data", "section_space", "framing_delta", "framing_candidates", "l1_framing",
    "vertex_matchings", "isometries_between", "distortion", "bm_search", "bm_upper",
]
