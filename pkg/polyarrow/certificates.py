from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from sympy import ImmutableMatrix, Rational

from .errors import CertificateError


@dataclass(frozen=True)
class Check:
    name: str
    relation: str
    lhs: Optional[Rational]
    rhs: Optional[Rational]
    passed: bool
    gated: bool = True


@dataclass
class Certificate:
    """
    Exact record of the identities and bounds verified by a construction.

    Gated checks decide `passed`; ungated ones are reported only.
    """
    subject: str
    checks: List[Check] = field(default_factory=list)
    values: Dict[str, Any] = field(default_factory=dict)

    def record(self, name: str, value: Any) -> Any:
        self.values[name] = value
        return value

    def _add(self, name, relation, lhs, rhs, passed, gated) -> bool:
        self.checks.append(Check(name, relation, lhs, rhs, bool(passed), bool(gated)))
        return bool(passed)

    def check_le(self, name: str, lhs: Rational, rhs: Rational, gated: bool = True) -> bool:
        return self._add(name, "<=", lhs, rhs, lhs <= rhs, gated)

    def check_ge(self, name: str, lhs: Rational, rhs: Rational, gated: bool = True) -> bool:
        return self._add(name, ">=", lhs, rhs, lhs >= rhs, gated)

    def check_lt(self, name: str, lhs: Rational, rhs: Rational, gated: bool = True) -> bool:
        return self._add(name, "<", lhs, rhs, lhs < rhs, gated)

    def check_eq(self, name: str, lhs: Rational, rhs: Rational, gated: bool = True) -> bool:
        return self._add(name, "==", lhs, rhs, lhs == rhs, gated)

    def check_identity(self, name: str, lhs: ImmutableMatrix, rhs: ImmutableMatrix, gated: bool = True) -> bool:
        return self._add(name, "matrix==", None, None, lhs.shape == rhs.shape and lhs == rhs, gated)

    def check_true(self, name: str, flag: bool, gated: bool = True) -> bool:
        return self._add(name, "true", None, None, flag, gated)

    def merge(self, other: "Certificate", prefix: str) -> None:
        for c in other.checks:
            self.checks.append(Check(f"{prefix}.{c.name}", c.relation, c.lhs, c.rhs, c.passed, c.gated))
        for key, value in other.values.items():
            self.values[f"{prefix}.{key}"] = value

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if c.gated)

    def failed_names(self) -> List[str]:
        return [c.name for c in self.checks if c.gated and not c.passed]

    def find(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def require(self, message: Optional[str] = None) -> "Certificate":
        if not self.passed:
            raise CertificateError(message or f"{self.subject}: failed {', '.join(self.failed_names())}", self)
        return self
