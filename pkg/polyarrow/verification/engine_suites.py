from typing import Any, Dict

from sympy import Rational

from ..arrows import DoubleArrow
from ..catalog import gen_double_arrows, gen_spaces
from ..certificates import Certificate
from ..engine import AuditReport, EngineParams, approx_round, audit_extension, init, run, skeleton_check
from ..linalg import columns_of, identity
from ..spaces import real_line
from .base_suite import BaseSuite

APPROX_EPS = (Rational(1, 10), Rational(1, 4), Rational(0))


class EngineAuditSuite(BaseSuite):
    """
    Builds stages over the real line and audits every ledgered probe against
    its own catalog arrow at tolerance 2^-m plus the catalog resolution.
    """
    name = "engine-audit"

    @property
    def instance_count(self) -> int:
        return 1

    def run_instance(self, index: int) -> Certificate:
        max_denom = self.config.max_denom
        spaces = gen_spaces(min(self.config.max_dim, 2), max_denom=max_denom)
        catalog = gen_double_arrows(spaces, max_denom=max_denom, seed=self.config.seed)
        params = EngineParams.from_config(seed=self.config.seed, max_entries=self.config.budget, max_denom=max_denom)
        steps = self.config.steps or 4
        state = run(init(real_line(), catalog, params), steps)

        cert = Certificate("engine_audit")
        cert.record("stage_dims", [P.dim for P in state.stages])
        cert.record("max_denom", params.max_denom)
        cert.record("resolution", catalog.resolution)
        cert.merge(skeleton_check(list(state.inclusions)), "skeleton")
        eps = self.config.eps if self.config.eps is not None else Rational(1, 2 ** params.grid_levels) + catalog.resolution
        cert.record("eps", eps)
        outcomes = []
        for n, entry in enumerate(state.entries()):
            target = catalog.entries[entry.catalog_index].arrow
            report = audit_extension(state, target, entry.probe, eps, stage=entry.stage)
            outcomes.append(report.outcome)
            cert.check_true(f"audit[{n}]", report.outcome != AuditReport.FAILED)
            if report.certificate is not None:
                cert.merge(report.certificate, f"audit[{n}]")
        cert.record("outcomes", outcomes)
        return cert


class ApproximationSuite(BaseSuite):
    """
    Approximation rounds for A <-> A (+)1 Z with a loosened projection, into
    the whole space and into the copy of A.
    """
    name = "approx"

    def parameters(self) -> Dict[str, Any]:
        params = super().parameters()
        params["eps"] = [self.config.eps] if self.config.eps is not None else list(APPROX_EPS)
        return params

    def run_instance(self, index: int) -> Certificate:
        g = self.generator
        eps = self.config.eps if self.config.eps is not None else APPROX_EPS[index % len(APPROX_EPS)]
        exact = g.double_arrow(g.space(g.dim(1, max(1, self.config.max_dim - 1))))
        slack = eps * g.positive() if eps > 0 else Rational(0)
        d = DoubleArrow(exact.fwd, exact.back.scaled(1 - slack))
        whole = index % 2 == 1
        basis = columns_of(identity(d.target.dim)) if whole else columns_of(exact.fwd.matrix)
        result = approx_round(d, basis, eps)
        cert = result.certificate
        cert.record("eps", eps)
        cert.record("slack", slack)
        cert.record("whole_space", whole)
        return cert


class SkeletonSuite(BaseSuite):
    """Composite projections of random (1, 0, 1) chains have norm one and fix their stage."""
    name = "skeleton"

    def run_instance(self, index: int) -> Certificate:
        g = self.generator
        chain = g.chain(g.dim(1, 4), min(self.config.max_dim + 1, 4))
        cert = skeleton_check(chain)
        cert.record("length", len(chain))
        return cert
