"""Thin exact wrappers around pycddlib in fraction mode."""
import logging
from fractions import Fraction
from typing import List, Sequence, Tuple

import cdd
from sympy import Rational

from ..errors import GeometryError
from ..linalg import Vector

NUMBER_TYPE = "fraction"

logger = logging.getLogger(__name__)


def to_cdd(value) -> Fraction:
    value = Rational(value)
    return Fraction(int(value.p), int(value.q))


def from_cdd(value) -> Rational:
    return Rational(int(value.numerator), int(value.denominator))


def _matrix(rows: Sequence[Sequence], rep_type) -> cdd.Matrix:
    mat = cdd.Matrix([[to_cdd(x) for x in row] for row in rows], linear=False, number_type=NUMBER_TYPE)
    mat.rep_type = rep_type
    return mat


def _rows(mat: cdd.Matrix) -> List[Tuple[Rational, ...]]:
    return [tuple(from_cdd(x) for x in mat[i]) for i in range(mat.row_size)]


def extreme_points(points: Sequence[Vector]) -> List[Vector]:
    """Drops every point lying in the convex hull of the others."""
    mat = _matrix([(1,) + tuple(p) for p in points], cdd.RepType.GENERATOR)
    mat.canonicalize()
    return [row[1:] for row in _rows(mat)]


def facets_of_hull(points: Sequence[Vector]) -> Tuple[List[Tuple[Rational, Vector]], bool]:
    """
    Inequalities b + <a, x> >= 0 of the hull of `points`.

    Returns the non-redundant (b, a) rows and whether cdd reported implicit
    equalities (hull not full-dimensional).
    """
    gen = _matrix([(1,) + tuple(p) for p in points], cdd.RepType.GENERATOR)
    ineq = cdd.Polyhedron(gen).get_inequalities()
    if ineq.lin_set:
        return [], True
    ineq.canonicalize()
    if ineq.lin_set:
        return [], True
    return [(row[0], row[1:]) for row in _rows(ineq)], False


def vertices_of_region(rows: Sequence[Sequence[Rational]]) -> Tuple[List[Tuple[Rational, Vector]], List[Sequence[Rational]], bool]:
    """
    Generators of {x : b + <a, x> >= 0} given rows (b, a...).

    Returns (generators as (t, v) with t the homogenizing coordinate,
    non-redundant input rows, whether the region contains a line).
    """
    ineq = _matrix(rows, cdd.RepType.INEQUALITY)
    ineq.canonicalize()
    kept = _rows(ineq)
    gen = cdd.Polyhedron(ineq).get_generators()
    generators = [(row[0], row[1:]) for row in _rows(gen)]
    return generators, kept, bool(gen.lin_set)


def lp_minimize(
    objective: Sequence[Rational],
    inequalities: Sequence[Sequence[Rational]],
    equalities: Sequence[Sequence[Rational]] = (),
) -> Tuple[Rational, Vector]:
    """
    Exact LP: minimize c0 + <c, x> subject to b + <a, x> >= 0 (inequalities)
    and b + <a, x> = 0 (equalities).
    """
    mat = _matrix(inequalities, cdd.RepType.INEQUALITY)
    if equalities:
        mat.extend([[to_cdd(x) for x in row] for row in equalities], linear=True)
    mat.obj_type = cdd.LPObjType.MIN
    mat.obj_func = tuple(to_cdd(c) for c in objective)
    lp = cdd.LinProg(mat)
    lp.solve()
    if lp.status != cdd.LPStatusType.OPTIMAL:
        logger.debug(f"LP finished with status {lp.status}")
        raise GeometryError(f"linear program not optimal: {lp.status}")
    return from_cdd(lp.obj_value), tuple(from_cdd(x) for x in lp.primal_solution)
