import logging
from dataclasses import dataclass, field
from typing import Tuple

from sympy import Rational

from ..arrows import DoubleArrow, Operator, eps_commutativity, is_isometry
from ..certificates import Certificate
from ..errors import HypothesisError, SpaceMismatchError
from ..linalg import columns_matrix, columns_of, hstack, identity, independent_prefix, solve, vstack, zero
from ..spaces import NormedSpace, SUM_1, SUM_INF, direct_sum, section_space
from .pushout import PushoutResult, factor, pushout

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CorrectionSpace:
    """
    E(f) inside the push-out of delta_eps: X -> X (+) X, x -> (x, eps x), along f.

    `basis` holds E's basis in PO coordinates; i_f and j_f are the isometric
    embeddings of X and Y.
    """
    f: Operator
    eps: Rational
    middle_norm: str
    po: PushoutResult
    basis: Operator
    space: NormedSpace
    i_f: Operator
    j_f: Operator
    certificate: Certificate = field(compare=False)


def correction_space(f: Operator, eps, middle_norm: str = SUM_1) -> CorrectionSpace:
    """
    Pushes delta_eps out along f and keeps the span of Q(X, 0, 0) and Q(0, 0, Y).

    The middle sum X (+)1 X keeps i_f isometric; with X (+)inf X the isometry
    of i_f is only reported.
    """
    eps = Rational(eps)
    X, Y = f.domain, f.codomain
    if not 0 <= eps < 1:
        raise HypothesisError(f"eps = {eps} outside [0, 1)")
    if not is_isometry(f, eps, contractive=True):
        raise HypothesisError(f"{X}->{Y} is not a contractive (1+{eps})-isometry")
    middle_norm = str(middle_norm)
    doubled = direct_sum(X, X, middle_norm)
    delta = Operator(X, doubled, vstack(identity(X.dim), eps * identity(X.dim)))
    po = pushout(delta, f)

    embed_x = po.j_prime.matrix * vstack(identity(X.dim), zero(X.dim, X.dim))
    embed_y = po.i_prime.matrix
    if eps > 0:
        space = po.po
        basis = Operator(space, po.po, identity(po.po.dim))
    else:
        # The middle copy is never reached, E is a proper section of PO
        generators = columns_of(hstack(embed_x, embed_y))
        chosen = independent_prefix(generators, po.po.dim)
        basis_vectors = [generators[k] for k in chosen]
        space = section_space(po.po, basis_vectors)
        basis = Operator(space, po.po, columns_matrix(basis_vectors, po.po.dim))
    space = NormedSpace(space.dim, space.ball, f"E({X},{Y})")
    basis = basis.with_spaces(space, po.po)
    i_f = Operator(X, space, solve(basis.matrix, embed_x))
    j_f = Operator(Y, space, solve(basis.matrix, embed_y))

    cert = Certificate("correction_space")
    cert.record("middle_norm", middle_norm)
    cert.record("dimension", space.dim)
    cert.merge(po.certificate, "pushout")
    i_upper, i_lower = i_f.constants
    j_upper, j_lower = j_f.constants
    i_gated = middle_norm == SUM_1
    cert.check_eq("i_f_upper", i_upper, Rational(1), gated=i_gated)
    cert.check_eq("i_f_lower", i_lower, Rational(1), gated=i_gated)
    cert.check_eq("j_f_upper", j_upper, Rational(1))
    cert.check_eq("j_f_lower", j_lower, Rational(1))
    defect = (j_f @ f - i_f).norm
    cert.record("defect", defect)
    cert.check_le("defect", defect, eps)
    cert.require()
    logger.debug(f"Correction space for {X}->{Y} at eps={eps}: dimension {space.dim}, defect {defect}")
    return CorrectionSpace(f, eps, middle_norm, po, basis, space, i_f, j_f, cert)


def correction_factor(corr: CorrectionSpace, k: Operator, l: Operator) -> Operator:
    """
    gamma: E -> V with gamma i_f = k and gamma j_f = l, for k: X -> V and
    l: Y -> V with ||l f - k|| <= eps.
    """
    f, eps = corr.f, corr.eps
    if k.domain != f.domain or l.domain != f.codomain or k.codomain != l.codomain:
        raise SpaceMismatchError("k and l must start at the ends of f and share a target")
    gap = l @ f - k
    if gap.norm > eps:
        raise HypothesisError(f"||l f - k|| = {gap.norm} exceeds eps = {eps}")
    doubled = corr.po.j_prime.domain
    if eps > 0:
        t = Operator(doubled, k.codomain, hstack(k.matrix, gap.matrix / eps))
    else:
        t = Operator(doubled, k.codomain, hstack(k.matrix, zero(k.codomain.dim, f.domain.dim)))
    gamma_po = factor(corr.po, t, l)
    gamma = gamma_po @ corr.basis
    if (gamma @ corr.i_f).matrix != k.matrix or (gamma @ corr.j_f).matrix != l.matrix:
        raise HypothesisError("factored map does not restrict to k and l")
    return gamma


def correction_double(d: DoubleArrow, eps) -> Tuple[NormedSpace, DoubleArrow, DoubleArrow, Certificate]:
    """
    Corrects a contractive (1+eps, eps, 1)-arrow X <-> Y into exact arrows
    di: X <-> E and dj: Y <-> E with i_bar j = f_bar and j_bar i = f.
    """
    eps = Rational(eps)
    if not d.arrow_class.within(1 + eps, eps, 1, contractive=True):
        raise HypothesisError(f"arrow of class {d.arrow_class.as_tuple()} is not a contractive (1+{eps}, {eps}, 1)-arrow")
    f, f_bar = d.fwd, d.back
    X, Y = d.source, d.target
    corr = correction_space(f, eps)
    i_bar = correction_factor(corr, Operator.identity(X), f_bar)
    j_bar = correction_factor(corr, f, Operator.identity(Y))
    di = DoubleArrow(corr.i_f, i_bar)
    dj = DoubleArrow(corr.j_f, j_bar)

    cert = Certificate("correction_double")
    cert.merge(corr.certificate, "space")
    cert.check_identity("i_bar_j", (i_bar @ corr.j_f).matrix, f_bar.matrix)
    cert.check_identity("j_bar_i", (j_bar @ corr.i_f).matrix, f.matrix)
    cert.check_identity("i_bar_i", (i_bar @ corr.i_f).matrix, identity(X.dim))
    cert.check_identity("j_bar_j", (j_bar @ corr.j_f).matrix, identity(Y.dim))
    cert.check_le("f_bar_norm", f_bar.norm, i_bar.norm)
    cert.check_le("f_norm", f.norm, j_bar.norm)
    backward = (f_bar @ j_bar - i_bar).norm
    cert.record("backward_defect", backward)
    exact = (f_bar @ f).matrix == identity(X.dim)
    cert.check_le("backward_defect", backward, eps, gated=exact)
    cert.record("eps_commutativity", eps_commutativity(di, d, dj))
    cert.require()
    return corr.space, di, dj, cert
