import random
from typing import List, Optional

from sympy import ImmutableMatrix, Rational

from ..arrows import DoubleArrow, Operator
from ..linalg import hstack, identity, rank, vstack, zero
from ..spaces import NormedSpace, SUM_1, direct_sum, from_vertices, l1, linf


class InstanceGenerator:
    """Seeded random rational spaces, operators and arrows for the property suites."""

    def __init__(self, seed: int, max_dim: int, max_denom: int):
        self.rng = random.Random(seed)
        self.max_dim = max_dim
        self.max_denom = max_denom

    def rational(self, low: int = -1, high: int = 1) -> Rational:
        q = self.rng.randint(1, self.max_denom)
        return Rational(self.rng.randint(low * q, high * q), q)

    def positive(self, high: Rational = Rational(1)) -> Rational:
        """A rational in (0, high]."""
        q = self.rng.randint(1, self.max_denom)
        return Rational(self.rng.randint(1, q), q) * high

    def dim(self, low: int = 1, high: Optional[int] = None) -> int:
        return self.rng.randint(low, max(low, high if high is not None else self.max_dim))

    def space(self, dim: int) -> NormedSpace:
        """l1, linf or the symmetric hull of the unit vectors and up to two grid points."""
        kind = self.rng.randrange(3)
        if kind == 0 or dim == 1:
            return l1(dim)
        if kind == 1:
            return linf(dim)
        units = [tuple(Rational(int(r == c)) for r in range(dim)) for c in range(dim)]
        extra = [tuple(self.rational(-1, 1) for _ in range(dim)) for _ in range(self.rng.randint(1, 2))]
        return from_vertices(units + [p for p in extra if any(p)], label=f"R{dim}.{len(extra)}")

    def matrix(self, rows: int, cols: int) -> ImmutableMatrix:
        return ImmutableMatrix(rows, cols, [self.rational() for _ in range(rows * cols)])

    def operator(self, A: NormedSpace, B: NormedSpace, contractive: bool = False) -> Operator:
        T = Operator(A, B, self.matrix(B.dim, A.dim))
        if contractive and T.norm > 1:
            T = T.scaled(1 / T.norm)
        return T

    def injective(self, A: NormedSpace, B: NormedSpace, tries: int = 20) -> Operator:
        for _ in range(tries):
            M = self.matrix(B.dim, A.dim)
            if rank(M) == A.dim:
                return Operator(A, B, M)
        return Operator(A, B, vstack(identity(A.dim), zero(B.dim - A.dim, A.dim)))

    def isomorphism(self, A: NormedSpace, B: NormedSpace) -> Operator:
        return self.injective(A, B)

    def double_arrow(self, A: NormedSpace, extra: Optional[int] = None) -> DoubleArrow:
        """Inclusion into A (+)1 Z with the coordinate projection: a (1, 0, 1)-arrow."""
        extra = self.dim(1, max(1, self.max_dim - A.dim)) if extra is None else extra
        Z = self.space(extra)
        B = direct_sum(A, Z, SUM_1)
        fwd = vstack(identity(A.dim), zero(Z.dim, A.dim))
        back = hstack(identity(A.dim), zero(A.dim, Z.dim))
        return DoubleArrow.from_matrices(A, B, fwd, back)

    def almost_arrow(self, A: NormedSpace, extra: Optional[int] = None, scale: Rational = Rational(1, 4)) -> DoubleArrow:
        """A double arrow with both maps moved by at most `scale` entrywise."""
        d = self.double_arrow(A, extra)
        for _ in range(10):
            fwd = d.fwd.matrix + self.matrix(*d.fwd.matrix.shape) * scale * self.positive()
            back = d.back.matrix + self.matrix(*d.back.matrix.shape) * scale * self.positive()
            if rank(fwd) == A.dim:
                return DoubleArrow.from_matrices(d.source, d.target, fwd, back)
        return d

    def chain(self, length: int, max_dim: int) -> List[DoubleArrow]:
        """(1, 0, 1)-arrows E_0 <-> E_1 <-> ... growing by one dimension per link."""
        links = []
        E = self.space(1)
        for _ in range(length):
            if E.dim >= max_dim:
                links.append(DoubleArrow.identity(E))
                continue
            link = self.double_arrow(E, 1)
            links.append(link)
            E = link.target
        return links

    def choice(self, options):
        return options[self.rng.randrange(len(options))]
