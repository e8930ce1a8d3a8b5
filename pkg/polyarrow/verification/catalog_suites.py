from sympy import Rational

from ..catalog import gen_double_arrows, gen_spaces, match_arrow, norming_arrow, norming_pairs
from ..certificates import Certificate
from ..spaces import l1, linf
from .base_suite import BaseSuite


class CatalogSuite(BaseSuite):
    """Every catalog arrow is (1, 0, 1) and matches itself exactly."""
    name = "catalog"

    @property
    def instance_count(self) -> int:
        return 1

    def run_instance(self, index: int) -> Certificate:
        max_dim = min(self.config.max_dim, 2)
        spaces = gen_spaces(max_dim, max_denom=min(self.config.max_denom, 2))
        catalog = gen_double_arrows(spaces, seed=self.config.seed, budget=self.config.budget)
        cert = Certificate("catalog")
        cert.record("spaces", len(catalog.spaces))
        cert.record("entries", len(catalog.entries))
        cert.check_true("nonempty", bool(catalog.entries))
        for n, entry in enumerate(catalog.entries):
            cert.check_true(f"double[{n}]", entry.arrow.arrow_class.is_double)
            match = match_arrow(entry.arrow, catalog, Rational(0))
            cert.check_true(f"self_match[{n}]", match is not None and match.exact and match.defect == 0)
        return cert


class NormingSuite(BaseSuite):
    """Norming pairs of l_inf^2, l_1^2 and random balls give (1, 0, 1)-arrows from the line."""
    name = "norming"
    EXPECTED = ((linf, 2, 8), (l1, 2, 8))

    def run_instance(self, index: int) -> Certificate:
        cert = Certificate("norming")
        if index < len(self.EXPECTED):
            make, dim, count = self.EXPECTED[index]
            X = make(dim)
        else:
            X = self.generator.space(self.generator.dim(1, self.config.max_dim))
            count = None
        pairs = norming_pairs(X)
        cert.record("space", str(X))
        cert.record("pairs", len(pairs))
        if count is not None:
            cert.check_eq("pair_count", Rational(len(pairs)), Rational(count))
        cert.check_true("nonempty", bool(pairs))
        for n, (u, phi) in enumerate(pairs):
            cert.check_true(f"double[{n}]", norming_arrow(X, u, phi).arrow_class.is_double)
        return cert
