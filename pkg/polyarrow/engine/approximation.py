import itertools
import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from sympy import ImmutableMatrix, Rational

from ..arrows import DoubleArrow, Operator, commutativity_defects, perturb_projection
from ..catalog import grid_values
from ..certificates import Certificate
from ..errors import HypothesisError
from ..geometry import distance_to_span
from ..linalg import columns_matrix, columns_of, identity, inverse, left_inverse, vec
from ..pushout import correction_double
from ..spaces import NormedSpace, l1_framing, section_space
from ..utils import load_config

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ApproxRound:
    corrected: DoubleArrow
    G1: NormedSpace
    di: DoubleArrow
    dj: DoubleArrow
    stage: DoubleArrow
    certificate: Certificate = field(compare=False)


def stage_arrow(E: NormedSpace, basis: Sequence[Sequence], max_denom: Optional[int] = None, budget: Optional[int] = None) -> DoubleArrow:
    """
    (iota, p): span(basis) <-> E with the section norm and the first norm-one
    left inverse L0 + N (1 - iota L0) over grid matrices N.
    """
    config = load_config()
    max_denom = max_denom if max_denom is not None else int(config.get("catalog_max_denom", 2))
    budget = budget if budget is not None else int(config.get("grid_budget", 400))
    vectors = [vec(b) for b in basis]
    S = section_space(E, vectors, label=f"E{len(vectors)}")
    iota = Operator(S, E, columns_matrix(vectors, E.dim))
    base = left_inverse(iota.matrix)
    complement = identity(E.dim) - iota.matrix * base
    for tried, entries in enumerate(itertools.product(grid_values(max_denom), repeat=S.dim * E.dim)):
        if tried >= budget:
            break
        back = Operator(E, S, base + ImmutableMatrix(S.dim, E.dim, list(entries)) * complement)
        if back.norm == 1:
            return DoubleArrow(iota, back)
        if complement.is_zero_matrix:
            break
    raise HypothesisError(f"no norm-one projection onto the {S.dim}-dimensional stage within {budget} candidates")


def _normalized(d: DoubleArrow, eps: Rational) -> DoubleArrow:
    if d.arrow_class.within(1 + eps, eps, 1, contractive=True):
        return d
    cls = d.arrow_class
    nu = max(cls.alpha - 1, cls.beta, cls.gamma - 1)
    scaled = DoubleArrow(d.fwd.scaled(1 / (1 + nu)), d.back.scaled(1 / (1 + nu)))
    if not scaled.arrow_class.within(1 + eps, eps, 1, contractive=True):
        raise HypothesisError(f"arrow of class {cls.as_tuple()} is not a contractive (1+{eps}, {eps}, 1)-arrow after scaling")
    return scaled


def approx_round(f_arrow: DoubleArrow, stage: Union[DoubleArrow, Sequence[Sequence]], eps) -> ApproxRound:
    """
    Moves f: F <-> E into a 1-complemented stage E_n of E (perturbation) and
    corrects the result into (1, 0, 1)-arrows through a correction space.

    The stage must carry the image of f within eps' <= eps/3 in the sense of
    the projection perturbation; eps' is measured, not assumed.
    """
    eps = Rational(eps)
    if not 0 <= eps < Rational(1, 3):
        raise HypothesisError(f"eps = {eps} outside [0, 1/3)")
    d = _normalized(f_arrow, eps)
    F, E = d.source, d.target
    if not isinstance(stage, DoubleArrow):
        stage = stage_arrow(E, stage)
    if stage.target != E or not stage.arrow_class.is_double:
        raise HypothesisError("stage must be a (1, 0, 1)-arrow into the ambient space")
    iota = stage.fwd
    S = stage.source
    f, f_bar = d.fwd, d.back
    k = F.dim

    image = section_space(E, columns_of(f.matrix))
    framing, delta = l1_framing(image)
    B = columns_matrix(framing, k)
    B_inv = inverse(B)
    a = columns_of(f.matrix * B)
    A = section_space(E, a, label=f"A[{k}]")
    exact_back = inverse((f_bar @ f).matrix) * f_bar.matrix
    p = Operator(E, A, B_inv * exact_back)
    distances, coords = [], []
    for point in a:
        gap, c = distance_to_span(E.facets, iota.matrix, point)
        distances.append(gap)
        coords.append(c)
    eps_prime = max(distances) * delta * p.norm
    if eps_prime > eps / 3:
        raise HypothesisError(f"stage carries the image only within eps' = {eps_prime} > eps/3 = {eps / 3}")
    x = [tuple(iota.matrix * columns_matrix([c], S.dim)) for c in coords]
    _, p_prime, perturbation = perturb_projection(E, a, p, x, eps_prime)

    C_mat = columns_matrix(coords, S.dim)
    f1 = Operator(F, S, C_mat * B_inv / (1 + 3 * eps))
    f1_bar = Operator(S, F, (f_bar @ f).matrix * B * p_prime.matrix * iota.matrix / (1 + 3 * eps_prime))

    cert = Certificate("approx_round")
    cert.record("delta", delta)
    cert.record("eps_prime", eps_prime)
    cert.record("stage_dimension", S.dim)
    cert.merge(perturbation, "perturbation")
    forward = (f - iota @ f1).norm
    backward = (f_bar @ iota - f1_bar).norm
    cert.record("forward_distance", forward)
    cert.record("backward_distance", backward)
    cert.check_le("forward_distance", forward, 4 * eps)
    cert.check_le("backward_distance", backward, 4 * eps)

    perturbed = DoubleArrow(f1, f1_bar)
    cls = perturbed.arrow_class
    cert.record("perturbed_class", cls.as_tuple())
    cert.check_true("perturbed_contractive", cls.contractive)
    cert.check_true("perturbed_class_6eps", cls.within(1 + 6 * eps, 6 * eps, 1, contractive=True))
    cert.require()
    eps_c = max(cls.alpha - 1, cls.beta)
    if eps_c >= 1:
        raise HypothesisError(f"perturbed arrow of class {cls.as_tuple()} cannot be corrected")
    cert.record("correction_eps", eps_c)

    G1, di, dj, correction = correction_double(perturbed, eps_c)
    cert.merge(correction, "correction")
    forward_c, backward_c = commutativity_defects(di, perturbed, dj)
    cert.record("commutativity", max(forward_c, backward_c))
    cert.check_le("forward_commutativity", forward_c, eps_c)
    cert.check_le("commutativity_6eps", forward_c, 6 * eps)
    # Projections agree on both ends; on the middle copy they differ by beta/eps_c
    if eps_c > 0:
        cert.check_le("backward_commutativity", backward_c, cls.beta / eps_c)
    else:
        cert.check_eq("backward_commutativity", backward_c, Rational(0))
    cert.require()
    logger.debug(f"Approximation round: delta={delta}, eps'={eps_prime}, forward={forward}, correction eps={eps_c}")
    return ApproxRound(perturbed, G1, di, dj, stage, cert)
