import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence, Tuple

from sympy import ImmutableMatrix, Rational

from ..errors import (
    DegeneratePolytopeError, DependentBasisError, DimensionCapExceededError,
    DimensionMismatchError, OriginNotInteriorError, UnboundedRegionError,
)
from ..linalg import Vector, columns_matrix, columns_of, matrix, rank, vec
from ..utils import dimension_cap
from . import cdd_backend

logger = logging.getLogger(__name__)


def _neg(v: Vector) -> Vector:
    return tuple(-x for x in v)


def _canonical(vectors) -> Tuple[Vector, ...]:
    return tuple(sorted(set(vectors)))


def _check_cap(dim: int, vertex_count: Optional[int] = None) -> None:
    cap = dimension_cap()
    if dim > cap:
        raise DimensionCapExceededError(dim, cap, vertex_count)


@dataclass(frozen=True)
class Polytope:
    """
    Convex polytope stored by its vertices (canonical lexicographic order).

    `facets` holds functionals phi of the inequalities <phi, x> <= 1 once known;
    it is populated lazily through `hrep` and never takes part in equality.
    """
    ambient_dim: int
    vertices: Tuple[Vector, ...]
    symmetric: bool = False
    facets: Optional[Tuple[Vector, ...]] = field(default=None, compare=False, repr=False)

    @cached_property
    def hrep(self) -> Tuple[Vector, ...]:
        if self.facets is not None:
            return self.facets
        return vrep_to_hrep(self).facets

    @cached_property
    def vertex_matrix(self) -> ImmutableMatrix:
        """ambient_dim x (#vertices), one vertex per column."""
        return columns_matrix(self.vertices, self.ambient_dim)

    @cached_property
    def facet_matrix(self) -> ImmutableMatrix:
        """(#facets) x ambient_dim, one functional per row."""
        return matrix(self.hrep, shape=(0, self.ambient_dim))

    @property
    def is_full_dimensional(self) -> bool:
        base = self.vertices[0]
        diffs = [tuple(a - b for a, b in zip(v, base)) for v in self.vertices[1:]]
        return bool(diffs) and rank(columns_matrix(diffs, self.ambient_dim)) == self.ambient_dim

    def max_facet_value(self, x: Sequence) -> Rational:
        values = self.facet_matrix * columns_matrix([vec(x)], self.ambient_dim)
        return max(values)


def hull_minimal(points: Sequence[Sequence]) -> Polytope:
    """Polytope whose vertices are exactly the extreme points of `points`."""
    if not points:
        raise DimensionMismatchError("hull of an empty point set")
    dim = len(points[0])
    for p in points:
        if len(p) != dim:
            raise DimensionMismatchError(f"point of length {len(p)} among points of length {dim}")
    _check_cap(dim, len(points))
    distinct = _canonical(vec(p) for p in points)
    if len(distinct) > 1:
        distinct = _canonical(cdd_backend.extreme_points(distinct))
    vertex_set = set(distinct)
    symmetric = all(_neg(v) in vertex_set for v in distinct)
    return Polytope(dim, distinct, symmetric)


def _normalize_facets(rows) -> Tuple[Vector, ...]:
    # cdd rows (b, a) read b + <a, x> >= 0
    facets = []
    for b, a in rows:
        if all(x == 0 for x in a):
            continue
        if b <= 0:
            raise OriginNotInteriorError(f"facet with right-hand side {b} does not keep the origin interior")
        facets.append(tuple(-x / b for x in a))
    return _canonical(facets)


def vrep_to_hrep(P: Polytope) -> Polytope:
    """Returns P with minimal facet functionals populated."""
    if P.facets is not None:
        return P
    _check_cap(P.ambient_dim, len(P.vertices))
    rows, degenerate = cdd_backend.facets_of_hull(P.vertices)
    if degenerate or len(P.vertices) <= P.ambient_dim:
        raise DegeneratePolytopeError(f"polytope with {len(P.vertices)} vertices is not full-dimensional in R^{P.ambient_dim}")
    facets = _normalize_facets(rows)
    logger.debug(f"V->H: {len(P.vertices)} vertices -> {len(facets)} facets in dim {P.ambient_dim}")
    return Polytope(P.ambient_dim, P.vertices, P.symmetric, facets)


def hrep_to_vrep(facets: Sequence[Sequence], ambient_dim: Optional[int] = None) -> Polytope:
    """Vertices of {x : <phi, x> <= 1 for every phi in facets}."""
    facets = [vec(f) for f in facets]
    if ambient_dim is None:
        if not facets:
            raise UnboundedRegionError("no inequalities given")
        ambient_dim = len(facets[0])
    for f in facets:
        if len(f) != ambient_dim:
            raise DimensionMismatchError(f"functional of length {len(f)} in dimension {ambient_dim}")
    _check_cap(ambient_dim)
    facets = [f for f in facets if any(x != 0 for x in f)]
    if not facets:
        raise UnboundedRegionError(f"no proper inequalities in dimension {ambient_dim}")
    rows = [(Rational(1),) + tuple(-x for x in f) for f in facets]
    generators, kept, has_line = cdd_backend.vertices_of_region(rows)
    if has_line or any(t == 0 for t, _ in generators):
        raise UnboundedRegionError(f"region cut out by {len(facets)} inequalities is unbounded")
    vertices = _canonical(tuple(x / t for x in v) for t, v in generators)
    if len(vertices) <= ambient_dim:
        raise DegeneratePolytopeError("region has empty interior")
    vertex_set = set(vertices)
    symmetric = all(_neg(v) in vertex_set for v in vertices)
    return Polytope(ambient_dim, vertices, symmetric, _normalize_facets((row[0], row[1:]) for row in kept))


def linear_image(P: Polytope, M: ImmutableMatrix) -> Polytope:
    if M.cols != P.ambient_dim:
        raise DimensionMismatchError(f"matrix with {M.cols} columns applied in dimension {P.ambient_dim}")
    return hull_minimal(columns_of(M * P.vertex_matrix))


def subspace_section(P: Polytope, basis: Sequence[Sequence]) -> Polytope:
    """Section of P by span(basis), expressed in basis coordinates."""
    basis_matrix = columns_matrix([vec(b) for b in basis], P.ambient_dim)
    if rank(basis_matrix) < len(basis):
        raise DependentBasisError(f"{len(basis)} section vectors are linearly dependent")
    restricted = P.facet_matrix * basis_matrix
    rows = [tuple(restricted[r, :]) for r in range(restricted.rows)]
    return hrep_to_vrep(rows, len(basis))
