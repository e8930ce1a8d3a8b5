import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence, Tuple

from sympy import ImmutableMatrix, Rational

from ..certificates import Certificate
from ..errors import DimensionMismatchError, NotInjectiveError, SpaceMismatchError
from ..geometry import subspace_section
from ..linalg import Vector, column, columns_of, identity, inverse, rank, vec, zero
from ..spaces import NormedSpace, column_norms, map_norm, norm

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Operator:
    domain: NormedSpace
    codomain: NormedSpace
    matrix: ImmutableMatrix

    def __post_init__(self):
        if self.matrix.shape != (self.codomain.dim, self.domain.dim):
            raise DimensionMismatchError(
                f"matrix of shape {self.matrix.shape} for {self.domain} -> {self.codomain}"
            )

    @classmethod
    def identity(cls, X: NormedSpace) -> "Operator":
        return cls(X, X, identity(X.dim))

    @classmethod
    def zero(cls, A: NormedSpace, B: NormedSpace) -> "Operator":
        return cls(A, B, zero(B.dim, A.dim))

    def __matmul__(self, other: "Operator") -> "Operator":
        """self after other."""
        if other.codomain != self.domain:
            raise SpaceMismatchError(f"cannot compose {other.domain}->{other.codomain} with {self.domain}->{self.codomain}")
        return Operator(other.domain, self.codomain, self.matrix * other.matrix)

    def _same_spaces(self, other: "Operator") -> None:
        if self.domain != other.domain or self.codomain != other.codomain:
            raise SpaceMismatchError(f"operators between different spaces: {self.domain}->{self.codomain} and {other.domain}->{other.codomain}")

    def __add__(self, other: "Operator") -> "Operator":
        self._same_spaces(other)
        return Operator(self.domain, self.codomain, self.matrix + other.matrix)

    def __sub__(self, other: "Operator") -> "Operator":
        self._same_spaces(other)
        return Operator(self.domain, self.codomain, self.matrix - other.matrix)

    def scaled(self, factor) -> "Operator":
        return Operator(self.domain, self.codomain, Rational(factor) * self.matrix)

    def with_spaces(self, domain: NormedSpace, codomain: NormedSpace) -> "Operator":
        return Operator(domain, codomain, self.matrix)

    def __call__(self, x: Sequence) -> Vector:
        return tuple(self.matrix * column(vec(x)))

    @cached_property
    def norm(self) -> Rational:
        return map_norm(self.matrix, self.domain, self.codomain)

    @cached_property
    def constants(self) -> Tuple[Rational, Rational]:
        return isometry_constants(self)

    @property
    def is_injective(self) -> bool:
        return rank(self.matrix) == self.domain.dim

    @property
    def is_surjective_isomorphism(self) -> bool:
        return self.domain.dim == self.codomain.dim and self.is_injective


def op_norm(T: Operator) -> Rational:
    return T.norm


def _inverse_norm_on_image(T: Operator) -> Rational:
    """||T^-1 : T(A) -> A|| with T(A) carrying the section norm."""
    if T.is_surjective_isomorphism:
        back = inverse(T.matrix)
        return max(column_norms(T.domain, back * T.codomain.ball.vertex_matrix))
    section = subspace_section(T.codomain.ball, columns_of(T.matrix))
    return max(norm(T.domain, v) for v in section.vertices)


def isometry_constants(T: Operator) -> Tuple[Rational, Rational]:
    """(||T||, conorm of T)."""
    if not T.is_injective:
        raise NotInjectiveError(f"operator {T.domain}->{T.codomain} of rank {rank(T.matrix)} is not injective")
    lower = 1 / _inverse_norm_on_image(T)
    return T.norm, lower


def conorm(T: Operator) -> Rational:
    return T.constants[1]


def least_isometry_constant(T: Operator) -> Rational:
    upper, lower = T.constants
    return max(upper, 1 / lower)


def is_isometry(T: Operator, eps=0, contractive: bool = False) -> bool:
    upper, lower = T.constants
    bound = 1 + Rational(eps)
    if contractive and upper > 1:
        return False
    return upper <= bound and lower >= 1 / bound


def normalize_isometry(T: Operator, eps) -> Tuple[Operator, Certificate]:
    """T/(1+eps) for a (1+eps)-isometry T, certified contractive (1+eps)^2-isometry."""
    eps = Rational(eps)
    cert = Certificate("normalize_isometry")
    cert.check_true("input_isometry", is_isometry(T, eps))
    scaled = T.scaled(1 / (1 + eps))
    upper, lower = scaled.constants
    cert.record("upper", upper)
    cert.record("lower", lower)
    cert.check_le("contractive", upper, Rational(1))
    cert.check_ge("lower_bound", lower, 1 / (1 + eps) ** 2)
    return scaled, cert
