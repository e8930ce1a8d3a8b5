import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

from sympy import Rational

from ..arrows import DoubleArrow, Operator, candidate_maps, intertwiner, least_isometry_constant
from ..linalg import Vector, column, matrix, rank
from ..spaces import NormedSpace, real_line
from ..utils import load_config
from .generation import ArrowCatalog, CatalogEntry

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MatchResult:
    """
    Catalog entry u with a: F_u -> A_w and b: G_u -> B_w such that w a = b u
    and a u_bar = w_bar b; `defect` is the largest of the isometry excess of
    a and b and the two intertwining residuals.
    """
    entry: CatalogEntry
    a: Operator
    b: Operator
    defect: Rational
    exact: bool


def _evaluate(w: DoubleArrow, u: DoubleArrow, a: Operator, b: Operator) -> Tuple[Rational, bool]:
    forward = (w.fwd @ a - b @ u.fwd).norm
    backward = (a @ u.back - w.back @ b).norm
    excess = max(least_isometry_constant(a), least_isometry_constant(b)) - 1
    contractive = a.norm <= 1 and b.norm <= 1
    return max(excess, forward, backward), forward == 0 and backward == 0 and contractive


def match_arrow(w: DoubleArrow, cat: ArrowCatalog, eps, budget: Optional[int] = None) -> Optional[MatchResult]:
    eps = Rational(eps)
    if budget is None:
        budget = int(load_config().get("distance_budget", 200))
    entries = cat.entries_between(w.source.dim, w.target.dim)
    if not entries:
        return None
    best: Optional[MatchResult] = None
    for entry in entries:
        u = entry.arrow
        tried = 0
        for a in candidate_maps(u.source, w.source, budget):
            a_op = Operator(u.source, w.source, a)
            for c in candidate_maps(u.target, w.target, budget):
                tried += 1
                if tried > budget:
                    break
                b = intertwiner(u, w, a, c)
                if rank(b) < b.rows:
                    continue
                b_op = Operator(u.target, w.target, b)
                defect, identities = _evaluate(w, u, a_op, b_op)
                result = MatchResult(entry, a_op, b_op, defect, identities and defect <= eps)
                if best is None or (not best.exact and result.exact) or (result.exact == best.exact and defect < best.defect):
                    best = result
                if best.exact and best.defect == 0:
                    logger.debug(f"Exact match for {w.source}->{w.target} at catalog entry {entry.source_index}->{entry.target_index}")
                    return best
            if tried > budget:
                break
    return best


def norming_pairs(X: NormedSpace) -> List[Tuple[Vector, Vector]]:
    """Vertex-facet incidences (u, phi) with <phi, u> = 1."""
    pairs = []
    for v in X.vertices:
        for phi in X.facets:
            if sum(a * b for a, b in zip(phi, v)) == 1:
                pairs.append((v, phi))
    return pairs


def norming_arrow(X: NormedSpace, u: Vector, phi: Vector) -> DoubleArrow:
    """(t -> t u, x -> <phi, x>): R <-> X."""
    R = real_line()
    return DoubleArrow(Operator(R, X, column(u)), Operator(X, R, matrix([phi])))
