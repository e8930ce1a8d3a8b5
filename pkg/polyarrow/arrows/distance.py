import itertools
import logging
from dataclasses import dataclass
from typing import Iterator, List, Optional

from sympy import ImmutableMatrix, Rational, log

from ..errors import DimensionMismatchError
from ..linalg import identity, rank
from ..spaces import NormedSpace, isometries_between, vertex_matchings
from ..utils import load_config
from .double_arrow import DoubleArrow
from .operator import Operator, least_isometry_constant

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DistanceBound:
    """
    Upper bound log(1 + epsilon) on the arrow metric, witnessed by the
    intertwiners a: A_d -> A_e and b: B_d -> B_e.
    """
    epsilon: Rational
    contractive_epsilon: Rational
    exact: bool
    a: Optional[Operator]
    b: Optional[Operator]
    candidates: int

    @property
    def log_bound(self):
        return log(1 + self.epsilon)


def candidate_maps(X: NormedSpace, Y: NormedSpace, budget: int) -> Iterator[ImmutableMatrix]:
    seen = set()
    first: List[ImmutableMatrix] = []
    if X == Y:
        first.append(identity(X.dim))
    first.extend(isometries_between(X, Y, budget))
    for t in itertools.chain(first, vertex_matchings(X, Y, budget)):
        if t not in seen:
            seen.add(t)
            yield t


def intertwiner(d: DoubleArrow, e: DoubleArrow, a: ImmutableMatrix, c: ImmutableMatrix) -> ImmutableMatrix:
    """
    b = g a f_bar + (1 - g g_bar) c (1 - f f_bar); for beta-zero arrows it
    satisfies b f = g a and a f_bar = g_bar b for every c.
    """
    f, f_bar = d.fwd.matrix, d.back.matrix
    g, g_bar = e.fwd.matrix, e.back.matrix
    one_b_d = identity(d.target.dim)
    one_b_e = identity(e.target.dim)
    return g * a * f_bar + (one_b_e - g * g_bar) * c * (one_b_d - f * f_bar)


def arrow_distance_search(d: DoubleArrow, e: DoubleArrow, budget: Optional[int] = None) -> DistanceBound:
    if d.source.dim != e.source.dim or d.target.dim != e.target.dim:
        raise DimensionMismatchError("arrows with different source or target dimensions")
    if budget is None:
        budget = int(load_config().get("distance_budget", 200))
    if d == e:
        return DistanceBound(Rational(0), Rational(0), True, Operator.identity(d.source), Operator.identity(d.target), 1)

    best: Optional[DistanceBound] = None
    tried = 0
    for a in candidate_maps(d.source, e.source, budget):
        a_op = Operator(d.source, e.source, a)
        for c in candidate_maps(d.target, e.target, budget):
            tried += 1
            if tried > budget:
                break
            b = intertwiner(d, e, a, c)
            if rank(b) < b.rows:  # not onto
                continue
            if b * d.fwd.matrix != e.fwd.matrix * a or a * d.back.matrix != e.back.matrix * b:
                continue
            b_op = Operator(d.target, e.target, b)
            eps = max(least_isometry_constant(a_op), least_isometry_constant(b_op)) - 1
            top = max(a_op.norm, b_op.norm)
            contractive_eps = top * max(1 / a_op.constants[1], 1 / b_op.constants[1]) - 1
            bound = DistanceBound(eps, contractive_eps, True, a_op, b_op, tried)
            if best is None or (eps, contractive_eps) < (best.epsilon, best.contractive_epsilon):
                best = bound
                if eps == 0:
                    logger.debug(f"Exact isometric intertwining after {tried} candidates")
                    return best
        if tried > budget:
            break
    if best is None:
        logger.debug(f"No intertwining pair among {tried} candidates")
        return DistanceBound(Rational(-1), Rational(-1), False, None, None, tried)
    return DistanceBound(best.epsilon, best.contractive_epsilon, best.exact, best.a, best.b, tried)


def arrow_distance_upper(d: DoubleArrow, e: DoubleArrow, budget: Optional[int] = None) -> Optional[Rational]:
    """
    epsilon with arrow distance <= log(1 + epsilon); 0 for an exact isometric
    intertwining, None when no intertwining pair was found within budget.
    """
    bound = arrow_distance_search(d, e, budget)
    return bound.epsilon if bound.a is not None else None
