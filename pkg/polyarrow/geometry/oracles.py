"""Exact LP oracles, independent of the cached H-representation."""
from typing import Sequence, Tuple

from sympy import ImmutableMatrix, Rational

from ..errors import DimensionMismatchError
from ..linalg import Vector, vec
from .cdd_backend import lp_minimize
from .polytope import Polytope


def gauge(P: Polytope, x: Sequence) -> Rational:
    """min { sum(l) : V l = x, l >= 0 }, the Minkowski gauge from the V-representation."""
    x = vec(x)
    if len(x) != P.ambient_dim:
        raise DimensionMismatchError(f"point of length {len(x)} in dimension {P.ambient_dim}")
    if all(c == 0 for c in x):
        return Rational(0)
    m = len(P.vertices)
    positivity = [(0,) + tuple(1 if i == j else 0 for j in range(m)) for i in range(m)]
    equalities = [
        (-x[r],) + tuple(v[r] for v in P.vertices)
        for r in range(P.ambient_dim)
    ]
    value, _ = lp_minimize((0,) + (1,) * m, positivity, equalities)
    return value


def contains(P: Polytope, x: Sequence) -> bool:
    return gauge(P, x) <= 1


def distance_to_span(facets: Sequence[Vector], span: ImmutableMatrix, point: Sequence) -> Tuple[Rational, Vector]:
    """
    min over c of max_phi <phi, span c - point>, i.e. the gauge distance from
    `point` to the column span. Returns (distance, c).
    """
    point = vec(point)
    k = span.cols
    rows = []
    for phi in facets:
        phi_span = [sum(phi[r] * span[r, c] for r in range(span.rows)) for c in range(k)]
        phi_point = sum(p * q for p, q in zip(phi, point))
        rows.append((phi_point,) + tuple(-x for x in phi_span) + (1,))
    rows.append((0,) * (k + 1) + (1,))
    value, solution = lp_minimize((0,) * (k + 1) + (1,), rows)
    return value, solution[:k]
