from typing import Any, Dict

from sympy import Rational

from ..arrows import DoubleArrow, Operator, exactify_projection, is_isometry
from ..certificates import Certificate
from ..errors import HypothesisError
from ..pushout import (
    complemented_pushout, correction_double, correction_factor, correction_space,
    multi_pushout_extension, pushout,
)
from .base_suite import BaseSuite

CORRECTION_EPS = (Rational(0), Rational(1, 10), Rational(1, 4))


class PushoutIsometrySuite(BaseSuite):
    """Push-out legs are contractive; an isometric (isomorphic) leg stays isometric (isomorphic)."""
    name = "isom"
    MODES = ("isometric", "isomorphism", "injective")

    def run_instance(self, index: int) -> Certificate:
        g = self.generator
        mode = self.MODES[index % len(self.MODES)]
        Y = g.space(g.dim(1, max(1, self.config.max_dim - 1)))
        if mode == "isometric":
            i = g.double_arrow(Y).fwd
        elif mode == "isomorphism":
            i = g.isomorphism(Y, g.space(Y.dim))
        else:
            i = g.injective(Y, g.space(g.dim(Y.dim, self.config.max_dim)))
        j = g.operator(Y, g.space(g.dim(1, self.config.max_dim)), contractive=True)
        result = pushout(i, j)
        cert = result.certificate
        cert.record("mode", mode)
        cert.record("po_dim", result.po.dim)
        return cert


class ComplementedPushoutSuite(BaseSuite):
    """Class tables and the identities of the complemented push-out, both variants."""
    name = "amostdpo"

    def run_instance(self, index: int) -> Certificate:
        g = self.generator
        A = g.space(g.dim(1, max(1, self.config.max_dim - 1)))
        di = g.double_arrow(A, 1)
        dj = g.almost_arrow(A, 1)
        cert = Certificate("amostdpo")
        cert.merge(complemented_pushout(di, dj).certificate, "standard")
        beta = dj.arrow_class.beta
        if beta < 1:
            exact = exactify_projection(dj, beta)
            cert.merge(complemented_pushout(di, exact, doubly_commutative=True).certificate, "doubly_commutative")
        cert.record("dj_class", dj.arrow_class.as_tuple())
        return cert


class MultiPushoutSuite(BaseSuite):
    """Restriction of the multiple push-out arrow: class bound and compatibility with the first projection."""
    name = "poprojection"

    def run_instance(self, index: int) -> Certificate:
        g = self.generator
        A1 = g.space(g.dim(1, 2))
        d1 = g.double_arrow(A1, 1)
        dj1 = g.almost_arrow(A1, 1)
        A2 = g.space(1)
        d2 = g.double_arrow(A2, 1)
        j2 = g.operator(A2, dj1.target, contractive=index % 2 == 0)
        result = multi_pushout_extension(d1, d2, dj1, j2)
        cert = result.certificate
        cert.record("po_dim", result.main.po.dim)
        return cert


class CorrectionSuite(BaseSuite):
    """Correction space: exact isometries, eps-commutativity and the universal property."""
    name = "correction"

    def parameters(self) -> Dict[str, Any]:
        params = super().parameters()
        params["eps"] = [self.config.eps] if self.config.eps is not None else list(CORRECTION_EPS)
        return params

    def run_instance(self, index: int) -> Certificate:
        g = self.generator
        eps = self.config.eps if self.config.eps is not None else CORRECTION_EPS[index % len(CORRECTION_EPS)]
        X = g.space(g.dim(1, max(1, self.config.max_dim - 1)))
        base = g.double_arrow(X, 1)
        Y = base.target
        f = g.injective(X, Y)
        f = f.scaled(1 / f.norm)
        if not is_isometry(f, eps, contractive=True):
            f = base.fwd.scaled(1 / (1 + eps))
        d = DoubleArrow(f, base.back)

        cert = Certificate("correction")
        cert.record("eps", eps)
        corr = correction_space(f, eps)
        cert.merge(corr.certificate, "space")
        try:
            correction_factor(corr, f, Operator.identity(Y))
            cert.check_true("universal_property", True)
        except HypothesisError as e:
            cert.record("universal_property_error", e.message)
            cert.check_true("universal_property", False)
        if d.arrow_class.within(1 + eps, eps, 1, contractive=True):
            _, _, _, double_cert = correction_double(d, eps)
            cert.merge(double_cert, "double")
        return cert
