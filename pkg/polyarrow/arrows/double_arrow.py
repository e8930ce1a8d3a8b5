import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Tuple

from sympy import ImmutableMatrix, Rational

from ..certificates import Certificate
from ..errors import HypothesisError, SingularOperatorError, SpaceMismatchError
from ..linalg import inverse, rank
from ..spaces import NormedSpace
from .operator import Operator, least_isometry_constant

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ArrowClass:
    alpha: Rational
    beta: Rational
    gamma: Rational
    contractive: bool

    def within(self, alpha, beta, gamma, contractive: bool = False) -> bool:
        """Componentwise comparison with a declared (alpha, beta, gamma) class."""
        if contractive and not self.contractive:
            return False
        return self.alpha <= alpha and self.beta <= beta and self.gamma <= gamma

    @property
    def is_double(self) -> bool:
        return self.alpha == 1 and self.beta == 0 and self.gamma == 1

    def as_tuple(self) -> Tuple[Rational, Rational, Rational, bool]:
        return self.alpha, self.beta, self.gamma, self.contractive


@dataclass(frozen=True)
class DoubleArrow:
    """A pair (fwd: A -> B, back: B -> A)."""
    fwd: Operator
    back: Operator

    def __post_init__(self):
        if self.fwd.domain != self.back.codomain or self.fwd.codomain != self.back.domain:
            raise SpaceMismatchError(
                f"forward {self.fwd.domain}->{self.fwd.codomain} does not pair with backward {self.back.domain}->{self.back.codomain}"
            )

    @property
    def source(self) -> NormedSpace:
        return self.fwd.domain

    @property
    def target(self) -> NormedSpace:
        return self.fwd.codomain

    @classmethod
    def identity(cls, X: NormedSpace) -> "DoubleArrow":
        return cls(Operator.identity(X), Operator.identity(X))

    @classmethod
    def from_matrices(cls, A: NormedSpace, B: NormedSpace, fwd: ImmutableMatrix, back: ImmutableMatrix) -> "DoubleArrow":
        return cls(Operator(A, B, fwd), Operator(B, A, back))

    @cached_property
    def arrow_class(self) -> ArrowClass:
        return classify(self)


def classify(d: DoubleArrow) -> ArrowClass:
    """Least admissible (alpha, beta, gamma) and the contractive flag."""
    alpha = least_isometry_constant(d.fwd)
    beta = ((d.back @ d.fwd) - Operator.identity(d.source)).norm
    return ArrowClass(alpha, beta, d.back.norm, bool(d.fwd.norm <= 1))


def compose(d2: DoubleArrow, d3: DoubleArrow) -> DoubleArrow:
    """(fwd3 fwd2, back2 back3) for d2: A <-> B and d3: B <-> C."""
    if d2.target != d3.source:
        raise SpaceMismatchError(f"middle spaces differ: {d2.target} vs {d3.source}")
    return DoubleArrow(d3.fwd @ d2.fwd, d2.back @ d3.back)


def certify_compose(d2: DoubleArrow, d3: DoubleArrow) -> Certificate:
    cert = Certificate("compose")
    result = compose(d2, d3)
    a2, a3, a = d2.arrow_class.alpha, d3.arrow_class.alpha, result.arrow_class.alpha
    cert.record("alpha", a)
    cert.check_le("alpha_product", a, a2 * a3)
    if d2.fwd.norm <= 1 and d3.fwd.norm <= 1:
        cert.check_le("contractive", result.fwd.norm, Rational(1))
    return cert


def scale_to_contractive(d: DoubleArrow, cls: Optional[ArrowClass] = None) -> DoubleArrow:
    """(fwd/alpha, back/gamma), certified contractive (alpha^2, (beta+gamma alpha-1)/(gamma alpha), 1)."""
    cls = cls or d.arrow_class
    if cls.gamma < 1:
        raise HypothesisError(f"gamma = {cls.gamma} < 1")
    scaled = DoubleArrow(d.fwd.scaled(1 / cls.alpha), d.back.scaled(1 / cls.gamma))
    certify_scale(d, cls, scaled).require()
    return scaled


def certify_scale(d: DoubleArrow, cls: ArrowClass, scaled: DoubleArrow) -> Certificate:
    cert = Certificate("scale_to_contractive")
    got = scaled.arrow_class
    ga = cls.gamma * cls.alpha
    cert.record("class", got.as_tuple())
    cert.check_le("alpha", got.alpha, cls.alpha ** 2)
    cert.check_le("beta", got.beta, (cls.beta + ga - 1) / ga)
    cert.check_le("gamma", got.gamma, Rational(1))
    cert.check_true("contractive", got.contractive)
    return cert


def exactify_projection(d: DoubleArrow, eps) -> DoubleArrow:
    """(f, (back fwd)^-1 back); exact left inverse of fwd."""
    eps = Rational(eps)
    cls = d.arrow_class
    if not cls.beta <= eps < 1:
        raise HypothesisError(f"beta = {cls.beta} is not <= eps = {eps} < 1")
    if cls.beta == 0:
        return d
    square = (d.back @ d.fwd).matrix
    if rank(square) < square.rows:
        raise SingularOperatorError("back*fwd is singular although beta < 1")
    exact = DoubleArrow(d.fwd, Operator(d.target, d.source, inverse(square) * d.back.matrix))
    certify_exactify(d, eps, exact).require()
    return exact


def certify_exactify(d: DoubleArrow, eps, exact: DoubleArrow) -> Certificate:
    eps = Rational(eps)
    cert = Certificate("exactify_projection")
    gamma = d.arrow_class.gamma
    got = exact.arrow_class
    distance = (d.back - exact.back).norm
    cert.record("gamma_prime", got.gamma)
    cert.record("distance", distance)
    cert.check_eq("beta_zero", got.beta, Rational(0))
    cert.check_identity("left_inverse", (exact.back @ exact.fwd).matrix, Operator.identity(d.source).matrix)
    cert.check_le("gamma_general", got.gamma, gamma / (1 - eps))
    cert.check_le("distance_general", distance, gamma * eps / (1 - eps))
    unit_back = gamma <= 1
    cert.check_le("gamma_unit", got.gamma, 1 + eps / (1 - eps), gated=unit_back)
    cert.check_le("distance_unit", distance, eps / (1 - eps), gated=unit_back)
    return cert


def _check_triangle(d1: DoubleArrow, d2: DoubleArrow, d3: DoubleArrow) -> None:
    if d1.source != d2.source or d2.target != d3.source or d3.target != d1.target:
        raise SpaceMismatchError("arrows do not form a triangle A<->B<->C over A<->C")


def commutativity_defects(d1: DoubleArrow, d2: DoubleArrow, d3: DoubleArrow) -> Tuple[Rational, Rational]:
    """(||i3 i2 - i1||, ||back2 back3 - back1||) for d1: A<->C, d2: A<->B, d3: B<->C."""
    _check_triangle(d1, d2, d3)
    return (d3.fwd @ d2.fwd - d1.fwd).norm, (d2.back @ d3.back - d1.back).norm


def eps_commutativity(d1: DoubleArrow, d2: DoubleArrow, d3: DoubleArrow) -> Rational:
    return max(commutativity_defects(d1, d2, d3))

