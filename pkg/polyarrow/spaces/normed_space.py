import itertools
import logging
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple, Union

from sympy import ImmutableMatrix, Rational

from ..errors import DependentBasisError, DimensionMismatchError, GeometryError
from ..geometry import Polytope, hull_minimal, linear_image, subspace_section
from ..linalg import Vector, columns_matrix, pivot_complement, rank, vec

logger = logging.getLogger(__name__)

SUM_1 = "1"
SUM_INF = "inf"


@dataclass(frozen=True)
class NormedSpace:
    dim: int
    ball: Polytope
    label: str = field(default="", compare=False)

    def __post_init__(self):
        if self.ball.ambient_dim != self.dim:
            raise DimensionMismatchError(f"ball in R^{self.ball.ambient_dim} for a space of dimension {self.dim}")
        if not self.ball.symmetric:
            raise GeometryError(f"unit ball of {self.label or 'space'} is not symmetric")

    @property
    def vertices(self) -> Tuple[Vector, ...]:
        return self.ball.vertices

    @property
    def facets(self) -> Tuple[Vector, ...]:
        return self.ball.hrep

    def __str__(self) -> str:
        return self.label or f"X[{self.dim}]"


def norm(X: NormedSpace, x: Sequence) -> Rational:
    """Gauge of X.ball at x: the largest facet value."""
    x = vec(x)
    if len(x) != X.dim:
        raise DimensionMismatchError(f"vector of length {len(x)} in {X} of dimension {X.dim}")
    return max(Rational(0), X.ball.max_facet_value(x))


def column_norms(X: NormedSpace, M: ImmutableMatrix) -> List[Rational]:
    if M.rows != X.dim:
        raise DimensionMismatchError(f"{M.rows}-row matrix measured in {X} of dimension {X.dim}")
    values = X.ball.facet_matrix * M
    return [max(Rational(0), max(values[:, c])) for c in range(M.cols)]


def map_norm(M: ImmutableMatrix, domain: NormedSpace, codomain: NormedSpace) -> Rational:
    """max over vertices v of the domain ball of the codomain norm of Mv."""
    if M.shape != (codomain.dim, domain.dim):
        raise DimensionMismatchError(f"matrix of shape {M.shape} between dimensions {domain.dim} and {codomain.dim}")
    if M.cols == 0 or M.rows == 0:
        return Rational(0)
    return max(Rational(0), max(codomain.ball.facet_matrix * M * domain.ball.vertex_matrix))


def _unit(i: int, n: int, sign: int = 1) -> Vector:
    return tuple(Rational(sign) if j == i else Rational(0) for j in range(n))


def _space(vertices, facets, label: str) -> NormedSpace:
    vertices = tuple(sorted(set(vertices)))
    return NormedSpace(len(vertices[0]), Polytope(len(vertices[0]), vertices, True, tuple(sorted(set(facets)))), label)


def l1(n: int) -> NormedSpace:
    vertices = [_unit(i, n, s) for i in range(n) for s in (1, -1)]
    facets = [vec(signs) for signs in itertools.product((1, -1), repeat=n)]
    return _space(vertices, facets, "R" if n == 1 else f"l1^{n}")


def linf(n: int) -> NormedSpace:
    vertices = [vec(signs) for signs in itertools.product((1, -1), repeat=n)]
    facets = [_unit(i, n, s) for i in range(n) for s in (1, -1)]
    return _space(vertices, facets, "R" if n == 1 else f"linf^{n}")


def real_line() -> NormedSpace:
    return l1(1)


def from_vertices(points: Sequence[Sequence], label: str = "") -> NormedSpace:
    """Space whose ball is the symmetric hull of the points."""
    pts = [vec(p) for p in points]
    ball = hull_minimal(pts + [tuple(-x for x in p) for p in pts])
    return NormedSpace(ball.ambient_dim, ball, label)


def dual_space(X: NormedSpace) -> NormedSpace:
    """Dual space: the polar ball, vertices and facets exchanged."""
    ball = Polytope(X.dim, tuple(sorted(X.facets)), True, tuple(sorted(X.vertices)))
    label = X.label[1:-2] if X.label.startswith("(") and X.label.endswith(")*") else f"({X.label})*"
    return NormedSpace(X.dim, ball, label)


def direct_sum(A: NormedSpace, B: NormedSpace, p: Union[str, int] = SUM_1) -> NormedSpace:
    zero_a = (Rational(0),) * A.dim
    zero_b = (Rational(0),) * B.dim
    p = str(p)
    if p == SUM_1:
        vertices = [v + zero_b for v in A.vertices] + [zero_a + w for w in B.vertices]
        facets = [phi + psi for phi in A.facets for psi in B.facets]
        label = f"{A} (+)1 {B}"
    elif p == SUM_INF:
        vertices = [v + w for v in A.vertices for w in B.vertices]
        facets = [phi + zero_b for phi in A.facets] + [zero_a + psi for psi in B.facets]
        label = f"{A} (+)inf {B}"
    else:
        raise GeometryError(f"unsupported direct sum norm {p!r}")
    return _space(vertices, facets, label)


def quotient_data(X: NormedSpace, kernel_basis: Sequence[Sequence]) -> Tuple[NormedSpace, ImmutableMatrix, ImmutableMatrix]:
    """Quotient space, quotient matrix and the canonical lift (zeros on pivot coordinates)."""
    kernel = columns_matrix([vec(k) for k in kernel_basis], X.dim)
    if rank(kernel) < kernel.cols:
        raise DependentBasisError(f"{kernel.cols} kernel vectors are linearly dependent")
    if kernel.cols >= X.dim:
        raise GeometryError(f"kernel of dimension {kernel.cols} is not proper in dimension {X.dim}")
    _, quotient, lift = pivot_complement(kernel)
    if kernel.cols == 0:
        return X, quotient, lift
    ball = linear_image(X.ball, quotient)
    logger.debug(f"Quotient of {X} by {kernel.cols} vectors: {len(ball.vertices)} vertices in dim {ball.ambient_dim}")
    return NormedSpace(ball.ambient_dim, ball, f"{X}/K{kernel.cols}"), quotient, lift


def quotient_space(X: NormedSpace, kernel_basis: Sequence[Sequence]) -> Tuple[NormedSpace, ImmutableMatrix]:
    space, quotient, _ = quotient_data(X, kernel_basis)
    return space, quotient


def section_space(X: NormedSpace, basis: Sequence[Sequence], label: str = "") -> NormedSpace:
    """span(basis) with the induced norm, in basis coordinates."""
    ball = subspace_section(X.ball, basis)
    return NormedSpace(ball.ambient_dim, ball, label or f"{X}|span{len(basis)}")
