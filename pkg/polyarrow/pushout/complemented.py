import logging
from dataclasses import dataclass, field
from typing import Optional

from sympy import Rational

from ..arrows import DoubleArrow, Operator
from ..certificates import Certificate
from ..errors import HypothesisError, SpaceMismatchError
from ..linalg import block_diag, hstack, identity, vstack, zero
from ..spaces import SUM_1, direct_sum
from .pushout import PushoutResult, factor, pushout, pushout_retraction

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ComplementedPushout:
    """Push-out of an exact arrow A <-> B along A <-> X with both induced arrows."""
    po: PushoutResult
    di_prime: DoubleArrow
    dj_prime: DoubleArrow
    doubly_commutative: bool
    certificate: Certificate = field(compare=False)


def complemented_pushout(di: DoubleArrow, dj: DoubleArrow, doubly_commutative: bool = False) -> ComplementedPushout:
    """
    Push-out of i: A -> B and j: A -> X with di_prime = (i', i'_bar): X <-> PO
    and dj_prime = (j', j'_bar): B <-> PO.

    With `doubly_commutative` both arrows must be exact and j'_bar factors
    (1_B, i j_bar), so every square commutes in both directions.
    """
    if di.source != dj.source:
        raise SpaceMismatchError(f"arrows start at {di.source} and {dj.source}")
    i, i_bar = di.fwd, di.back
    j, j_bar = dj.fwd, dj.back
    A, B, X = di.source, di.target, dj.target
    ci, cj = di.arrow_class, dj.arrow_class
    if ci.beta != 0:
        raise HypothesisError(f"beta = {ci.beta} of the push-out arrow is not 0")
    if doubly_commutative and cj.beta != 0:
        raise HypothesisError(f"beta = {cj.beta} of the second arrow is not 0")

    po = pushout(i, j)
    i_prime, j_prime = po.i_prime, po.j_prime
    one_a = Operator.identity(A)
    one_b = Operator.identity(B)
    i_prime_bar = pushout_retraction(po, i_bar)
    correction = one_b + i @ (j_bar @ j - one_a) @ i_bar
    if doubly_commutative:
        j_prime_bar = factor(po, one_b, i @ j_bar)
    else:
        j_prime_bar = factor(po, correction, i @ j_bar)
    result_i = DoubleArrow(i_prime, i_prime_bar)
    result_j = DoubleArrow(j_prime, j_prime_bar)

    cert = Certificate("complemented_pushout")
    cert.record("variant", "doubly_commutative" if doubly_commutative else "standard")
    cert.merge(po.certificate, "pushout")
    cert.check_identity("j_bar_prime_on_i_prime", (j_prime_bar @ i_prime).matrix, (i @ j_bar).matrix)
    expected = one_b if doubly_commutative else correction
    cert.check_identity("j_bar_prime_on_j_prime", (j_prime_bar @ j_prime).matrix, expected.matrix)
    cert.check_identity("i_bar_prime_on_i_prime", (i_prime_bar @ i_prime).matrix, identity(X.dim))
    cert.check_identity("i_bar_prime_on_j_prime", (i_prime_bar @ j_prime).matrix, (j @ i_bar).matrix)
    cert.check_identity("backward_square", (j_bar @ i_prime_bar).matrix, (i_bar @ j_prime_bar).matrix)
    if doubly_commutative:
        cert.check_identity("forward_projections", (j @ i_bar).matrix, (i_prime_bar @ j_prime).matrix)
        cert.check_identity("backward_embeddings", (i @ j_bar).matrix, (j_prime_bar @ i_prime).matrix)
    _check_class_table(cert, di, dj, result_i, result_j, doubly_commutative)
    cert.require()
    logger.debug(f"Complemented push-out over {A}: PO of dimension {po.po.dim}, classes {result_i.arrow_class.as_tuple()} and {result_j.arrow_class.as_tuple()}")
    return ComplementedPushout(po.with_backs(i_prime_bar, j_prime_bar), result_i, result_j, doubly_commutative, cert)


def _check_class_table(cert: Certificate, di: DoubleArrow, dj: DoubleArrow, result_i: DoubleArrow, result_j: DoubleArrow, doubly_commutative: bool) -> None:
    ci, cj = di.arrow_class, dj.arrow_class
    alpha, gamma = ci.alpha, ci.gamma
    u, v, w = cj.alpha, cj.beta, cj.gamma
    got_i, got_j = result_i.arrow_class, result_j.arrow_class
    cert.record("i_prime_class", got_i.as_tuple())
    cert.record("j_prime_class", got_j.as_tuple())

    cert.check_le("i_prime_alpha", got_i.alpha, alpha * u)
    cert.check_eq("i_prime_beta", got_i.beta, Rational(0))
    cert.check_le("i_prime_gamma", got_i.gamma, max(1, u * gamma))
    cert.check_le("i_prime_gamma_table", got_i.gamma, u * gamma, gated=False)
    cert.check_true("i_prime_contractive", got_i.contractive)
    cert.check_le("j_prime_alpha", got_j.alpha, u * alpha)
    cert.check_true("j_prime_contractive", got_j.contractive)
    if doubly_commutative:
        cert.check_eq("j_prime_beta", got_j.beta, Rational(0))
        cert.check_le("j_prime_gamma", got_j.gamma, max(1, alpha * w))
    else:
        cert.check_le("j_prime_beta", got_j.beta, alpha * v * gamma)
        cert.check_le("j_prime_gamma", got_j.gamma, max(w * alpha, 1 + alpha * v * gamma))

    if ci.is_double and cj.contractive:
        cert.check_true("i_prime_exact", got_i.is_double)
        cert.check_le("j_prime_alpha_sharp", got_j.alpha, u)
        cert.check_le("j_prime_beta_sharp", got_j.beta, v)
        cert.check_le("j_prime_gamma_sharp", got_j.gamma, max(w, 1 + v))


@dataclass(frozen=True)
class MultiPushout:
    """
    Push-out of i1 (+) i2: A1 (+)1 A2 -> B1 (+)1 B2 along j1 + j2, with the
    arrow (J|B1, J|B1_bar): B1 <-> PO and (i', i'_bar): X <-> PO.
    """
    main: PushoutResult
    j_restricted: DoubleArrow
    po_arrow: DoubleArrow
    certificate: Certificate = field(compare=False)
    stage_one: Optional[ComplementedPushout] = None


def multi_pushout_extension(
    d1: DoubleArrow,
    d2: Optional[DoubleArrow],
    dj1: DoubleArrow,
    j2: Optional[Operator],
) -> MultiPushout:
    if d1.source != dj1.source:
        raise SpaceMismatchError(f"arrows start at {d1.source} and {dj1.source}")
    if not d1.arrow_class.is_double:
        raise HypothesisError(f"first arrow has class {d1.arrow_class.as_tuple()}, not (1, 0, 1)")
    stage_one = complemented_pushout(d1, dj1)
    if d2 is None:
        cert = Certificate("multi_pushout_extension")
        cert.merge(stage_one.certificate, "stage_one")
        return MultiPushout(stage_one.po, stage_one.dj_prime, stage_one.di_prime, cert, stage_one)

    if j2 is None or j2.domain != d2.source or j2.codomain != dj1.target:
        raise SpaceMismatchError("second leg must map the second source into the common target")
    if not d2.arrow_class.is_double:
        raise HypothesisError(f"second arrow has class {d2.arrow_class.as_tuple()}, not (1, 0, 1)")
    i1, i1_bar, i2, i2_bar = d1.fwd, d1.back, d2.fwd, d2.back
    j1, j1_bar = dj1.fwd, dj1.back
    A1, B1, A2, B2, X = d1.source, d1.target, d2.source, d2.target, dj1.target

    A = direct_sum(A1, A2, SUM_1)
    B = direct_sum(B1, B2, SUM_1)
    i_sum = Operator(A, B, block_diag(i1.matrix, i2.matrix))
    j_sum = Operator(A, X, hstack(j1.matrix, j2.matrix))
    i_bar_sum = Operator(B, A, block_diag(i1_bar.matrix, i2_bar.matrix))
    main = pushout(i_sum, j_sum)
    PO = main.po

    J = main.j_prime
    J_b1 = Operator(B1, PO, J.matrix * vstack(identity(B1.dim), zero(B2.dim, B1.dim)))
    i1_prime, j1_prime = stage_one.di_prime.fwd, stage_one.dj_prime.fwd
    j1_prime_bar = stage_one.dj_prime.back

    second = pushout(i2, i1_prime @ j2)
    i2_prime, carried = second.i_prime, second.j_prime
    i2_prime_bar = pushout_retraction(second, i2_bar)
    tau = factor(main, Operator(B, second.po, hstack((i2_prime @ j1_prime).matrix, carried.matrix)), i2_prime @ i1_prime)
    J_b1_bar = j1_prime_bar @ i2_prime_bar @ tau
    main_bar = pushout_retraction(main, i_bar_sum)
    j_restricted = DoubleArrow(J_b1, J_b1_bar)
    po_arrow = DoubleArrow(main.i_prime, main_bar)

    cert = Certificate("multi_pushout_extension")
    cert.merge(stage_one.certificate, "stage_one")
    cert.merge(main.certificate, "main")
    cls1 = dj1.arrow_class
    u, v, w = cls1.alpha, cls1.beta, cls1.gamma
    j2_norm = j2.norm
    got = j_restricted.arrow_class
    cert.record("j_restricted_class", got.as_tuple())
    cert.record("j2_norm", j2_norm)
    cert.check_identity("i2_bar_prime_left_inverse", (i2_prime_bar @ i2_prime).matrix, identity(stage_one.po.po.dim))
    cert.check_le("tau_norm", tau.norm, Rational(1))
    cert.check_true("contractive", got.contractive)
    cert.check_le("beta", got.beta, v)
    cert.check_le("gamma", got.gamma, max(w, 1 + v) * u * max(1, j2_norm))
    cert.check_le("alpha", got.alpha, u, gated=j2_norm <= 1)
    cert.check_identity("po_arrow_left_inverse", (main_bar @ main.i_prime).matrix, identity(X.dim))
    cert.check_identity("backward_compatibility", (i1_bar @ J_b1_bar).matrix, (j1_bar @ main_bar).matrix)
    cert.require()
    logger.debug(f"Multiple push-out: PO of dimension {PO.dim}, restricted class {got.as_tuple()}")
    return MultiPushout(main.with_backs(main_bar, None), j_restricted, po_arrow, cert, stage_one)
