import logging
from dataclasses import dataclass, field, replace
from typing import Optional

from sympy import ImmutableMatrix

from ..arrows import Operator, is_isometry
from ..certificates import Certificate
from ..errors import HypothesisError, NotInjectiveError, SpaceMismatchError
from ..linalg import hstack, identity, vstack, zero
from ..spaces import NormedSpace, SUM_1, direct_sum, quotient_data

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PushoutResult:
    """
    PO = (A (+)1 B) / {(i y, -j y)} for i: Y -> A and j: Y -> B.

    Coordinates on PO are the kept coordinates of the pivot complement of the
    kernel; `lift` is the canonical section of `quotient_map`.
    """
    i: Operator
    j: Operator
    summed: NormedSpace
    kernel: ImmutableMatrix
    po: NormedSpace
    quotient_map: Operator
    lift: ImmutableMatrix
    i_prime: Operator
    j_prime: Operator
    certificate: Certificate = field(compare=False)
    back_i: Optional[Operator] = None
    back_j: Optional[Operator] = None

    def with_backs(self, back_i: Optional[Operator], back_j: Optional[Operator]) -> "PushoutResult":
        return replace(self, back_i=back_i, back_j=back_j)


def pushout(i: Operator, j: Operator) -> PushoutResult:
    if i.domain != j.domain:
        raise SpaceMismatchError(f"push-out legs start at {i.domain} and {j.domain}")
    if not i.is_injective:
        raise NotInjectiveError(f"push-out leg {i.domain}->{i.codomain} is not injective")
    A, B, Y = i.codomain, j.codomain, i.domain
    summed = direct_sum(A, B, SUM_1)
    kernel = vstack(i.matrix, -j.matrix)
    space, quotient, lift = quotient_data(summed, [tuple(kernel[:, c]) for c in range(Y.dim)])
    po = NormedSpace(space.dim, space.ball, f"PO({A},{B})")
    q = Operator(summed, po, quotient)
    i_prime = Operator(B, po, quotient * vstack(zero(A.dim, B.dim), identity(B.dim)))
    j_prime = Operator(A, po, quotient * vstack(identity(A.dim), zero(B.dim, A.dim)))

    cert = Certificate("pushout")
    cert.check_identity("commutes", (j_prime @ i).matrix, (i_prime @ j).matrix)
    cert.check_le("i_prime_norm", i_prime.norm, 1)
    cert.check_le("j_prime_norm", j_prime.norm, 1)
    i_lower = i.constants[1]
    if is_isometry(i) and j.norm <= 1:
        upper, lower = i_prime.constants
        cert.check_eq("i_prime_upper", upper, 1)
        cert.check_eq("i_prime_lower", lower, 1)
    elif i.is_surjective_isomorphism and j.norm <= 1:
        lower = i_prime.constants[1]
        cert.check_le("i_prime_inverse", 1 / lower, max(1, 1 / i_lower))
    else:
        cert.check_true("i_prime_injective", i_prime.is_injective)
    logger.debug(f"Push-out of {A} and {B} over {Y}: dimension {po.dim}, {len(po.vertices)} vertices")
    cert.require()
    return PushoutResult(i, j, summed, kernel, po, q, lift, i_prime, j_prime, cert)


def factor(po: PushoutResult, j2: Operator, i2: Operator) -> Operator:
    """
    The operator gamma: PO -> C with gamma i' = i2 and gamma j' = j2, for
    j2: A -> C and i2: B -> C satisfying j2 i = i2 j.
    """
    if j2.domain != po.j_prime.domain or i2.domain != po.i_prime.domain or j2.codomain != i2.codomain:
        raise SpaceMismatchError("factoring maps do not start at the push-out legs")
    if (j2 @ po.i).matrix != (i2 @ po.j).matrix:
        raise HypothesisError("factoring maps do not commute over the push-out base")
    joined = hstack(j2.matrix, i2.matrix)
    gamma = Operator(po.po, j2.codomain, joined * po.lift)
    cert = Certificate("factor")
    cert.check_identity("on_i_prime", (gamma @ po.i_prime).matrix, i2.matrix)
    cert.check_identity("on_j_prime", (gamma @ po.j_prime).matrix, j2.matrix)
    cert.check_le("norm", gamma.norm, max(j2.norm, i2.norm))
    cert.require()
    return gamma


def pushout_retraction(po: PushoutResult, back: Operator) -> Operator:
    """
    Left inverse of i': B -> PO induced by a left inverse `back` of i,
    i.e. the factoring of (j back, 1_B).
    """
    if (back @ po.i).matrix != identity(po.i.domain.dim):
        raise HypothesisError("backward map is not a left inverse of the push-out leg")
    return factor(po, po.j @ back, Operator.identity(po.j.codomain))
