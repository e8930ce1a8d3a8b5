import logging
from typing import Sequence, Tuple

from sympy import Rational

from ..certificates import Certificate
from ..errors import DimensionMismatchError, HypothesisError, SingularOperatorError, SpaceMismatchError
from ..linalg import columns_matrix, identity, inverse, rank, vec
from ..spaces import NormedSpace, framing_delta, norm, section_space
from .operator import Operator

logger = logging.getLogger(__name__)


def perturb_projection(
    E: NormedSpace,
    A_basis: Sequence[Sequence],
    p: Operator,
    x: Sequence[Sequence],
    eps,
) -> Tuple[Operator, Operator, Certificate]:
    """
    Moves a complemented subspace A = span(a_i) of E to X = span(x_i).

    Coordinates on A and X are the coefficients on a_i and x_i, so tau: A -> X,
    a_i -> x_i is the identity matrix. Returns (tau, p', certificate) where
    p' = ((tau p)|X)^-1 tau p is an exact projection of E onto X.
    """
    eps = Rational(eps)
    a = [vec(v) for v in A_basis]
    xs = [vec(v) for v in x]
    k = len(a)
    if k == 0:
        raise DimensionMismatchError("empty basis")
    if len(xs) != k:
        raise DimensionMismatchError(f"{len(xs)} perturbed vectors for a basis of {k}")
    if any(len(v) != E.dim for v in a + xs):
        raise DimensionMismatchError(f"vectors must live in {E} of dimension {E.dim}")
    if not 0 <= eps < Rational(1, 3):
        raise HypothesisError(f"eps = {eps} outside [0, 1/3)")
    if eps == 0 and xs != a:
        raise HypothesisError("eps = 0 only admits the unperturbed basis")

    a_mat = columns_matrix(a, E.dim)
    x_mat = columns_matrix(xs, E.dim)
    if rank(x_mat) < k:
        raise HypothesisError("perturbed vectors are linearly dependent")
    A = section_space(E, a, label=f"A[{k}]")
    if p.domain != E or p.codomain != A:
        raise SpaceMismatchError(f"projection {p.domain}->{p.codomain} does not map {E} onto span(a)")
    if p.matrix * a_mat != identity(k):
        raise HypothesisError("p does not restrict to the identity on span(a)")

    C = p.norm
    delta = framing_delta(A, [tuple(identity(k)[:, c]) for c in range(k)])
    distances = [norm(E, tuple(xi - ai for xi, ai in zip(xv, av))) for xv, av in zip(xs, a)]
    allowed = eps / (delta * C)
    if max(distances) > allowed:
        raise HypothesisError(f"perturbation {max(distances)} exceeds eps/(delta C) = {allowed}")

    X = section_space(E, xs, label=f"X[{k}]")
    tau = Operator(A, X, identity(k))
    tau_p = Operator(E, X, p.matrix)
    restricted = p.matrix * x_mat
    if rank(restricted) < k:
        raise SingularOperatorError("(tau p)|X is singular although eps < 1/3")
    p_prime = Operator(E, X, inverse(restricted) * p.matrix)

    cert = Certificate("perturb_projection")
    cert.record("C", C)
    cert.record("delta", delta)
    cert.record("max_perturbation", max(distances))
    onto = x_mat * p_prime.matrix
    cert.check_identity("idempotent", onto * onto, onto)
    cert.check_identity("identity_on_X", p_prime.matrix * x_mat, identity(k))

    upper, lower = tau.constants
    cert.record("tau_constants", (upper, lower))
    cert.check_le("tau_upper", upper, 1 + eps)
    cert.check_ge("tau_lower", lower, 1 - eps)
    cert.check_ge("tau_isometry", lower, 1 / (1 + eps), gated=False)

    mu = eps * (1 + eps) / (1 - eps)
    distance = (p_prime - tau_p).norm
    cert.record("distance", distance)
    cert.check_le("projection_norm", p_prime.norm, C * (1 - eps ** 2) / (1 - 3 * eps))
    proven = mu * (1 + eps) * C / (1 - mu)
    cert.check_le("distance", distance, proven)
    cert.check_le("distance_tight", distance, eps * (1 + eps) ** 2 * C / (1 - eps), gated=False)

    scaled = (p_prime.scaled(1 + eps) - tau_p.scaled(1 / (1 + eps))).norm
    cert.record("scaled_distance", scaled)
    cert.check_le("scaled_distance", scaled, (1 + eps) * (proven + (1 - 1 / (1 + eps) ** 2) * (1 + eps) * C))
    cert.check_le("scaled_distance_3eps", scaled, 3 * eps * C, gated=False)
    logger.debug(f"Perturbed projection: C={C}, delta={delta}, ||p'||={p_prime.norm}, ||p'-tau p||={distance}")
    return tau, p_prime, cert


def scaled_perturbation(tau: Operator, p_prime: Operator, eps) -> Tuple[Operator, Operator]:
    """((1+eps)^-1 tau, (1+eps) p'): contractive embedding with its projection."""
    eps = Rational(eps)
    return tau.scaled(1 / (1 + eps)), p_prime.scaled(1 + eps)
