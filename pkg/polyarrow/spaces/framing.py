import itertools
import logging
from typing import List, Optional, Sequence, Tuple

from sympy import Rational

from ..errors import DependentBasisError, HypothesisError
from ..linalg import Vector, columns_matrix, inverse, rank, vec
from ..utils import load_config
from .normed_space import NormedSpace, norm

logger = logging.getLogger(__name__)


def framing_delta(A: NormedSpace, basis: Sequence[Sequence]) -> Rational:
    """
    delta = 1/conorm(T) for T: l1^n -> A, e_i -> a_i, with unit a_i.
    Computed as the largest l1 norm of T^-1 v over the vertices v of A's ball.
    """
    basis = [vec(b) for b in basis]
    if len(basis) != A.dim:
        raise DependentBasisError(f"{len(basis)} vectors cannot frame a space of dimension {A.dim}")
    for b in basis:
        if norm(A, b) != 1:
            raise HypothesisError(f"framing vector {b} is not of norm one in {A}")
    t_inv = inverse(columns_matrix(basis, A.dim))
    coords = t_inv * A.ball.vertex_matrix
    return max(sum(abs(coords[r, c]) for r in range(coords.rows)) for c in range(coords.cols))


def framing_candidates(A: NormedSpace, limit: Optional[int] = None) -> List[Vector]:
    """Ball vertices (one per +- pair) followed by normalized pairwise sums."""
    if limit is None:
        limit = int(load_config().get("framing_candidates", 12))
    reps = sorted({max(v, tuple(-x for x in v)) for v in A.vertices})
    candidates = list(reps)
    for v, w in itertools.combinations(reps, 2):
        for s in (1, -1):
            total = tuple(a + s * b for a, b in zip(v, w))
            size = norm(A, total)
            if size == 0:
                continue
            unit = tuple(x / size for x in total)
            unit = max(unit, tuple(-x for x in unit))
            if unit not in candidates:
                candidates.append(unit)
            if len(candidates) >= max(limit, len(reps)):
                return candidates
    return candidates


def l1_framing(A: NormedSpace, limit: Optional[int] = None) -> Tuple[List[Vector], Rational]:
    """Unit basis of A with the smallest delta among the bounded candidate set."""
    candidates = framing_candidates(A, limit)
    best: Optional[Tuple[List[Vector], Rational]] = None
    for combo in itertools.combinations(candidates, A.dim):
        if rank(columns_matrix(list(combo), A.dim)) < A.dim:
            continue
        delta = framing_delta(A, combo)
        if best is None or delta < best[1]:
            best = (list(combo), delta)
            if delta == 1:
                break
    if best is None:
        raise DependentBasisError(f"no framing basis among {len(candidates)} candidates of {A}")
    logger.debug(f"Framing of {A}: delta={best[1]} from {len(candidates)} candidates")
    return best
