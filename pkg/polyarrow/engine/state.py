from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Optional, Tuple

from sympy import Rational

from ..arrows import ArrowClass, DoubleArrow
from ..catalog import ArrowCatalog
from ..certificates import Certificate
from ..pushout import MultiPushout
from ..spaces import NormedSpace
from ..utils import load_config

Key = Tuple[int, int]


@dataclass(frozen=True)
class EngineParams:
    grid_levels: int
    max_denom: int
    grid_budget: int
    max_entries: int
    max_dim: int
    seed: int

    @classmethod
    def from_config(cls, **overrides) -> "EngineParams":
        config = load_config()
        values = {
            "grid_levels": int(config.get("grid_levels", 3)),
            "max_denom": int(config.get("catalog_max_denom", 2)),
            "grid_budget": int(config.get("grid_budget", 400)),
            "max_entries": int(config.get("engine_max_entries", 2)),
            "max_dim": int(config.get("engine_max_dim", 6)),
            "seed": int(config.get("default_seed", 0)),
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


@dataclass(frozen=True)
class LedgerEntry:
    """
    Item d_(stage, index): the `index`-th pair of the enumeration of stage
    `stage`, pushed out at `step` in slot `position`.
    """
    step: int
    position: int
    stage: int
    index: int
    catalog_index: int
    grid_level: int
    probe: DoubleArrow

    @property
    def key(self) -> Key:
        return self.stage, self.index


@dataclass(frozen=True)
class StepRecord:
    step: int
    entries: Tuple[LedgerEntry, ...]
    pending: Tuple[Key, ...]
    certificate: Certificate = field(compare=False)
    extension: Optional[MultiPushout] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class ConstructionState:
    """Stages P_0 = X, ..., P_n with (1, 0, 1) inclusions P_k <-> P_k+1."""
    stages: Tuple[NormedSpace, ...]
    inclusions: Tuple[DoubleArrow, ...]
    ledger: Tuple[StepRecord, ...]
    catalog: ArrowCatalog
    params: EngineParams

    @property
    def n(self) -> int:
        return len(self.stages) - 1

    @property
    def X(self) -> NormedSpace:
        return self.stages[0]

    @property
    def pending(self) -> Tuple[Key, ...]:
        return self.ledger[-1].pending if self.ledger else ()

    def entries(self) -> List[LedgerEntry]:
        return [e for record in self.ledger for e in record.entries]

    def processed(self) -> set:
        return {e.key for e in self.entries()}

    def truncated(self, steps: int) -> "ConstructionState":
        """State after the first `steps` steps."""
        return replace(
            self,
            stages=self.stages[:steps + 1],
            inclusions=self.inclusions[:steps],
            ledger=self.ledger[:steps],
        )


@dataclass(frozen=True)
class AuditReport:
    outcome: str
    target: DoubleArrow
    probe: DoubleArrow
    stage: int
    eps: Rational
    found_step: Optional[int] = None
    extension: Optional[DoubleArrow] = None
    defects: Optional[Tuple[Rational, Rational]] = None
    extension_class: Optional[ArrowClass] = None
    match_defect: Optional[Rational] = None
    grid_defect: Optional[Rational] = None
    certificate: Optional[Certificate] = field(default=None, compare=False)
    notes: Dict[str, Any] = field(default_factory=dict, compare=False)

    OK = "ok"
    FAILED = "failed"
    INSUFFICIENT = "insufficient_stages"

    @property
    def succeeded(self) -> bool:
        return self.outcome == self.OK


@dataclass(frozen=True)
class SeriesReport:
    reports: Tuple[AuditReport, ...]
    monotone: bool
    violations: Tuple[int, ...]
