"""Exact rational matrix helpers shared by every module."""
from typing import Iterable, List, Sequence, Tuple

from sympy import ImmutableMatrix, Rational, eye, zeros

from .errors import DependentBasisError, DimensionMismatchError, SingularOperatorError

Vector = Tuple[Rational, ...]


def to_rational(value) -> Rational:
    if isinstance(value, Rational):
        return value
    if hasattr(value, "numerator") and hasattr(value, "denominator"):
        return Rational(int(value.numerator), int(value.denominator))
    return Rational(value)


def vec(values: Iterable) -> Vector:
    return tuple(to_rational(v) for v in values)


def matrix(rows: Sequence[Sequence], shape: Tuple[int, int] = None) -> ImmutableMatrix:
    rows = [list(vec(r)) for r in rows]
    if shape is not None and not rows:
        return ImmutableMatrix(zeros(*shape))
    return ImmutableMatrix(rows)


def columns_matrix(vectors: Sequence[Sequence], dim: int) -> ImmutableMatrix:
    """Stacks vectors as the columns of a dim x len(vectors) matrix."""
    if not vectors:
        return ImmutableMatrix(zeros(dim, 0))
    for v in vectors:
        if len(v) != dim:
            raise DimensionMismatchError(f"vector of length {len(v)} in ambient dimension {dim}")
    return ImmutableMatrix([list(vec(v)) for v in vectors]).T


def column(v: Sequence) -> ImmutableMatrix:
    return ImmutableMatrix(len(v), 1, list(vec(v)))


def columns_of(m: ImmutableMatrix) -> List[Vector]:
    return [tuple(m[:, j]) for j in range(m.cols)]


def identity(n: int) -> ImmutableMatrix:
    return ImmutableMatrix(eye(n))


def zero(rows: int, cols: int) -> ImmutableMatrix:
    return ImmutableMatrix(zeros(rows, cols))


def is_zero(m: ImmutableMatrix) -> bool:
    return all(entry == 0 for entry in m)


def hstack(*blocks: ImmutableMatrix) -> ImmutableMatrix:
    return ImmutableMatrix.hstack(*blocks)


def vstack(*blocks: ImmutableMatrix) -> ImmutableMatrix:
    return ImmutableMatrix.vstack(*blocks)


def block_diag(*blocks: ImmutableMatrix) -> ImmutableMatrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    out = zeros(rows, cols)
    r = c = 0
    for b in blocks:
        out[r:r + b.rows, c:c + b.cols] = b
        r += b.rows
        c += b.cols
    return ImmutableMatrix(out)


def rank(m: ImmutableMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return len(m.rref()[1])


def independent_prefix(vectors: Sequence[Vector], dim: int) -> List[int]:
    """Indices of a greedy maximal independent subfamily, scanning in order."""
    chosen: List[int] = []
    for idx, v in enumerate(vectors):
        trial = columns_matrix([vectors[i] for i in chosen] + [v], dim)
        if rank(trial) == len(chosen) + 1:
            chosen.append(idx)
            if len(chosen) == dim:
                break
    return chosen


def left_inverse(b: ImmutableMatrix) -> ImmutableMatrix:
    """
    Exact left inverse of a full column rank matrix built from its first
    independent rows (the selected rows are inverted, the rest get zeros).
    """
    if b.cols == 0:
        return zero(0, b.rows)
    _, pivots = b.T.rref()
    if len(pivots) < b.cols:
        raise DependentBasisError(f"matrix of shape {b.shape} has rank {len(pivots)} < {b.cols}")
    selector = zeros(b.cols, b.rows)
    for k, row in enumerate(pivots):
        selector[k, row] = 1
    square = ImmutableMatrix(selector) * b
    return square.inv() * ImmutableMatrix(selector)


def solve(b: ImmutableMatrix, rhs: ImmutableMatrix) -> ImmutableMatrix:
    """Returns X with b X = rhs exactly; b must have full column rank."""
    x = left_inverse(b) * rhs
    if b * x != rhs:
        raise SingularOperatorError("right-hand side is not in the column space")
    return x


def inverse(m: ImmutableMatrix) -> ImmutableMatrix:
    if m.rows != m.cols or rank(m) < m.rows:
        raise SingularOperatorError(f"matrix of shape {m.shape} is not invertible")
    return m.inv()


def pivot_complement(kernel: ImmutableMatrix) -> Tuple[Tuple[int, ...], ImmutableMatrix, ImmutableMatrix]:
    """
    Canonical complement of the column span of `kernel` (n x r).

    Pivot columns of the row-reduced kernel^T are the dropped coordinates.
    Returns (pivots, quotient, lift): quotient maps R^n onto the kept
    coordinates with kernel = ker(quotient); lift embeds the kept coordinates
    with zeros at the pivots, so quotient * lift = identity.
    """
    n, r = kernel.shape
    if r == 0:
        return (), identity(n), identity(n)
    reduced, pivots = kernel.T.rref()
    if len(pivots) < r:
        raise DependentBasisError(f"kernel basis of {r} vectors has rank {len(pivots)}")
    kept = [c for c in range(n) if c not in pivots]
    quotient = zeros(len(kept), n)
    lift = zeros(n, len(kept))
    for row, c in enumerate(kept):
        quotient[row, c] = 1
        lift[c, row] = 1
        for k, p in enumerate(pivots):
            quotient[row, p] = -reduced[k, c]
    return tuple(pivots), ImmutableMatrix(quotient), ImmutableMatrix(lift)
