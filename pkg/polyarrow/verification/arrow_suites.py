from typing import Any, Dict

from sympy import Rational

from ..arrows import (
    DoubleArrow, Operator, certify_compose, certify_exactify, certify_scale, compose,
    exactify_projection, perturb_projection,
)
from ..certificates import Certificate
from ..linalg import columns_of, identity
from ..spaces import framing_delta, norm, section_space
from .base_suite import BaseSuite

PERTURBATION_EPS = (Rational(1, 10), Rational(1, 5), Rational(3, 10))


class ArrowCalculusSuite(BaseSuite):
    """Composition, rescaling to contractive and exact projections of random almost double arrows."""
    name = "casiequiv"

    def run_instance(self, index: int) -> Certificate:
        g = self.generator
        A = g.space(g.dim(1, max(1, self.config.max_dim - 1)))
        d2 = g.almost_arrow(A, 1)
        d3 = g.almost_arrow(d2.target, 1)
        d4 = g.double_arrow(d3.target, 1)

        cert = Certificate("casiequiv")
        cert.merge(certify_compose(d2, d3), "compose")
        left = compose(compose(d2, d3), d4)
        right = compose(d2, compose(d3, d4))
        cert.check_identity("associative_fwd", left.fwd.matrix, right.fwd.matrix)
        cert.check_identity("associative_back", left.back.matrix, right.back.matrix)

        cls = d2.arrow_class
        cert.record("class", cls.as_tuple())
        if cls.gamma >= 1:
            scaled = DoubleArrow(d2.fwd.scaled(1 / cls.alpha), d2.back.scaled(1 / cls.gamma))
            cert.merge(certify_scale(d2, cls, scaled), "scale")
        if cls.beta < 1:
            exact = exactify_projection(d2, cls.beta)
            cert.merge(certify_exactify(d2, cls.beta, exact), "exactify")
        return cert


class PerturbationSuite(BaseSuite):
    """Projections onto perturbed bases: idempotence, norm and distance bounds."""
    name = "close"

    def parameters(self) -> Dict[str, Any]:
        params = super().parameters()
        params["eps"] = [self.config.eps] if self.config.eps is not None else list(PERTURBATION_EPS)
        return params

    def run_instance(self, index: int) -> Certificate:
        g = self.generator
        eps = self.config.eps if self.config.eps is not None else PERTURBATION_EPS[index % len(PERTURBATION_EPS)]
        base = g.double_arrow(g.space(g.dim(1, max(1, self.config.max_dim - 1))))
        E = base.target
        a = columns_of(base.fwd.matrix)
        k = len(a)
        A = section_space(E, a, label=f"A[{k}]")
        p = Operator(E, A, base.back.matrix)
        delta = framing_delta(A, columns_of(identity(k)))
        allowed = eps / (delta * p.norm)

        x = []
        for v in a:
            w = tuple(g.rational() for _ in range(E.dim))
            size = norm(E, w)
            if size == 0:
                x.append(v)
                continue
            step = allowed * g.positive() / size
            x.append(tuple(vi + step * wi for vi, wi in zip(v, w)))
        _, _, cert = perturb_projection(E, a, p, x, eps)
        cert.record("eps", eps)
        return cert
