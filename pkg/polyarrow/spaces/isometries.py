import itertools
import logging
from typing import Iterator, List, Optional, Tuple

from sympy import ImmutableMatrix, Rational

from ..errors import DimensionMismatchError
from ..linalg import columns_matrix, columns_of, identity, independent_prefix, inverse, rank
from ..utils import load_config
from .normed_space import NormedSpace, map_norm

logger = logging.getLogger(__name__)


def vertex_matchings(A: NormedSpace, B: NormedSpace, budget: Optional[int] = None) -> Iterator[ImmutableMatrix]:
    """
    Invertible maps sending A's first vertex basis onto ordered tuples of B's
    vertices, in lexicographic order of the tuples.
    """
    if A.dim != B.dim:
        raise DimensionMismatchError(f"{A} and {B} have different dimensions")
    n = A.dim
    basis_idx = independent_prefix(A.vertices, n)
    basis_inv = inverse(columns_matrix([A.vertices[i] for i in basis_idx], n))
    produced = 0
    for images in itertools.permutations(B.vertices, n):
        if budget is not None and produced >= budget:
            return
        produced += 1
        w = columns_matrix(list(images), n)
        if rank(w) < n:
            continue
        yield w * basis_inv


def isometries_between(A: NormedSpace, B: NormedSpace, budget: Optional[int] = None) -> List[ImmutableMatrix]:
    """Surjective linear isometries A -> B found among vertex matchings."""
    if A.dim != B.dim or len(A.vertices) != len(B.vertices):
        return []
    targets = set(B.vertices)
    found = []
    for t in vertex_matchings(A, B, budget):
        if set(columns_of(t * A.ball.vertex_matrix)) == targets:
            found.append(t)
    return found


def distortion(t: ImmutableMatrix, A: NormedSpace, B: NormedSpace) -> Rational:
    return map_norm(t, A, B) * map_norm(t.inv(), B, A)


def _perturbations(t: ImmutableMatrix) -> Iterator[ImmutableMatrix]:
    for step in (Rational(1, 2), Rational(1, 4), Rational(1, 8)):
        for r in range(t.rows):
            for c in range(t.cols):
                for sign in (1, -1):
                    moved = t.as_mutable()
                    moved[r, c] += sign * step
                    if rank(ImmutableMatrix(moved)) == t.rows:
                        yield ImmutableMatrix(moved)


def bm_search(A: NormedSpace, B: NormedSpace, budget: Optional[int] = None) -> Tuple[Rational, ImmutableMatrix]:
    """
    Best ||T|| ||T^-1|| over identity, vertex matchings and local rational
    perturbations of the incumbent, within `budget` candidates.
    """
    if A.dim != B.dim:
        raise DimensionMismatchError(f"{A} and {B} have different dimensions")
    if budget is None:
        budget = int(load_config().get("bm_budget", 400))
    best_t = identity(A.dim)
    best = distortion(best_t, A, B)
    tried = 1
    if best == 1:
        return best, best_t
    for t in vertex_matchings(A, B, budget):
        tried += 1
        value = distortion(t, A, B)
        if value < best:
            best, best_t = value, t
            if best == 1:
                return best, best_t
    improved = True
    while improved and tried < budget:
        improved = False
        for t in _perturbations(best_t):
            tried += 1
            value = distortion(t, A, B)
            if value < best:
                best, best_t, improved = value, t, True
                break
            if tried >= budget:
                break
    logger.debug(f"Banach-Mazur search {A} vs {B}: bound {best} after {tried} candidates")
    return best, best_t


def bm_upper(A: NormedSpace, B: NormedSpace, budget: Optional[int] = None) -> Rational:
    return bm_search(A, B, budget)[0]
