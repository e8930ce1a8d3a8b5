import logging
from typing import List, Optional, Tuple

from sympy import Rational

from ..arrows import DoubleArrow, Operator, perturb_projection, scale_to_contractive
from ..catalog import match_arrow
from ..certificates import Certificate
from ..errors import HypothesisError
from ..linalg import columns_of, inverse
from ..spaces import section_space
from .construction import extension_at, stage_inclusion
from .state import AuditReport, ConstructionState, SeriesReport

logger = logging.getLogger(__name__)


def _stages_of(state: ConstructionState, probe: DoubleArrow) -> List[int]:
    # Spaces compare by ball only, so relabelled stages still match
    return [k for k, P in enumerate(state.stages) if P == probe.target]


def audit_extension(
    state: ConstructionState,
    target: DoubleArrow,
    probe: DoubleArrow,
    eps,
    stage: Optional[int] = None,
) -> AuditReport:
    """
    Extends the probe f: F <-> P_k along the target (delta, delta_bar): F <-> G
    through the recorded push-outs and measures ||f_m delta - f|| and
    ||delta_bar f_m_bar - f_bar|| on the stage before P_m.

    A probe that is not contractive is rescaled first. A probe whose back map is
    only an almost-projection is replaced by the exact projection onto f(F)
    through perturb_projection. Catalog probes already land inside a stage, so
    the image stays put and only the projection moves.
    """
    eps = Rational(eps)
    if target.source != probe.source:
        raise HypothesisError(f"target starts at {target.source}, probe at {probe.source}")
    stages = [stage] if stage is not None else _stages_of(state, probe)
    if not stages:
        raise HypothesisError(f"probe target {probe.target} is not a stage")
    notes = {}
    if not probe.arrow_class.contractive and probe.arrow_class.gamma >= 1:
        probe = scale_to_contractive(probe)
        notes["rescaled"] = True
    perturbation = None
    if 0 < probe.arrow_class.beta < 1:
        probe, perturbation = _exact_projection(probe)
        notes["projection_perturbed"] = True

    match = match_arrow(target, state.catalog, eps)
    if match is None or match.defect > eps:
        raise HypothesisError(f"no catalog match for {target.source}->{target.target} at tolerance {eps}")
    catalog_index = state.catalog.entries.index(match.entry)
    a, b = match.a, match.b
    a_inv = Operator(target.source, a.domain, inverse(a.matrix))
    b_inv = Operator(target.target, b.domain, inverse(b.matrix))

    best: Optional[AuditReport] = None
    for k in stages:
        fa = probe.fwd.with_spaces(probe.source, state.stages[k]) @ a
        fa_back = a_inv @ probe.back.with_spaces(state.stages[k], probe.source)
        candidates = [e for e in state.entries() if e.catalog_index == catalog_index and e.stage == k]
        if not candidates:
            report = AuditReport(AuditReport.INSUFFICIENT, target, probe, k, eps, match_defect=match.defect, notes=notes)
            best = best or report
            continue
        hit = min(candidates, key=lambda e: (max((e.probe.fwd - fa).norm, (e.probe.back - fa_back).norm), e.step, e.position))
        grid_defect = max((hit.probe.fwd - fa).norm, (hit.probe.back - fa_back).norm)

        ext = extension_at(state, hit.step, hit.position)
        m = hit.step + 1
        f_m = ext.fwd @ b_inv
        f_m_bar = b @ ext.back
        extension = DoubleArrow(f_m, f_m_bar)
        lift = stage_inclusion(state, k, m)
        before = stage_inclusion(state, k, hit.step)
        last = state.inclusions[hit.step]
        f = probe.fwd.with_spaces(probe.source, state.stages[k])
        f_bar = probe.back.with_spaces(state.stages[k], probe.source)
        forward = (f_m @ target.fwd - lift.fwd @ f).norm
        backward = (target.back @ f_m_bar @ last.fwd - f_bar @ before.back).norm
        cls = extension.arrow_class

        cert = Certificate("audit_extension")
        cert.record("match_defect", match.defect)
        cert.record("grid_defect", grid_defect)
        if perturbation is not None:
            cert.merge(perturbation, "perturbation")
        cert.check_le("forward_defect", forward, 4 * eps)
        cert.check_le("backward_defect", backward, 4 * eps)
        seven = 7 * eps
        cert.check_le("alpha", cls.alpha, 1 + seven)
        cert.check_eq("beta", cls.beta, Rational(0))
        if seven < 1:
            cert.check_le("gamma", cls.gamma, (1 + seven) / (1 - seven))
        outcome = AuditReport.OK if cert.passed else AuditReport.FAILED
        report = AuditReport(
            outcome, target, probe, k, eps, hit.step, extension, (forward, backward), cls,
            match.defect, grid_defect, cert, notes,
        )
        if best is None or _better(report, best):
            best = report
    logger.debug(f"Audit at eps={eps}: {best.outcome} at stage {best.stage}, defects {best.defects}")
    return best


def _exact_projection(probe: DoubleArrow) -> Tuple[DoubleArrow, Certificate]:
    f, f_bar = probe.fwd, probe.back
    E = probe.target
    a = columns_of(f.matrix)
    A = section_space(E, a)
    p = Operator(E, A, inverse((f_bar @ f).matrix) * f_bar.matrix)
    _, p_prime, cert = perturb_projection(E, a, p, a, 0)
    return DoubleArrow(f, p_prime.with_spaces(E, probe.source)), cert


def _better(report: AuditReport, best: AuditReport) -> bool:
    if best.defects is None:
        return report.defects is not None
    if report.defects is None:
        return False
    if report.succeeded != best.succeeded:
        return report.succeeded
    return max(report.defects) < max(best.defects)


def audit_series(state: ConstructionState, target: DoubleArrow, probe: DoubleArrow, eps) -> SeriesReport:
    """Audits every prefix of the chain and flags defects that grow with more stages."""
    first = min(_stages_of(state, probe), default=None)
    if first is None:
        raise HypothesisError(f"probe target {probe.target} is not a stage")
    reports = []
    for steps in range(first, state.n + 1):
        reports.append(audit_extension(state.truncated(steps), target, probe, eps, stage=first))
    violations = []
    previous = None
    for idx, report in enumerate(reports):
        if report.defects is None:
            continue
        if previous is not None and any(now > before for now, before in zip(report.defects, previous)):
            violations.append(idx)
            logger.warning(f"Audit defects grew at prefix {first + idx}: {previous} -> {report.defects}")
        previous = report.defects
    return SeriesReport(tuple(reports), not violations, tuple(violations))
