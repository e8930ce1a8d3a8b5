from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional

from sympy import Rational

from .errors import ConfigError
from .utils import format_rational, load_config, parse_rational, sha256_hex


@dataclass(frozen=True)
class RunConfig:
    """One CLI invocation: the command, its inputs and config keys overridden by flags."""
    command: str
    seed: int
    instances: int
    max_dim: int
    max_denom: int
    budget: Optional[int] = None
    steps: Optional[int] = None
    eps: Optional[Rational] = None
    out: Optional[Path] = None
    history: bool = True
    history_db: str = "polyarrow_history.sqlite3"
    inputs: Dict[str, Path] = field(default_factory=dict)

    @classmethod
    def build(cls, command: str, config: Optional[Dict[str, Any]] = None, **flags) -> "RunConfig":
        """Config file values overridden by the flags that were given (None means not given)."""
        config = load_config() if config is None else config
        eps = flags.get("eps")
        try:
            values = dict(
                command=command,
                seed=int(_pick(flags, "seed", config.get("default_seed", 0))),
                instances=int(_pick(flags, "instances", config.get("suite_instances", 20))),
                max_dim=int(_pick(flags, "max_dim", config.get("suite_max_dim", 3))),
                max_denom=int(_pick(flags, "max_denom", config.get("suite_max_denom", 8))),
                budget=flags.get("budget"),
                steps=flags.get("steps"),
                eps=None if eps is None else parse_rational(eps),
                out=None if flags.get("out") is None else Path(flags["out"]),
                history=not flags.get("no_history", False),
                history_db=str(config.get("history_db", "polyarrow_history.sqlite3")),
                inputs={k: Path(v) for k, v in (flags.get("inputs") or {}).items() if v is not None},
            )
        except (TypeError, ValueError) as e:
            raise ConfigError(f"invalid run parameter: {e}") from e
        if values["instances"] < 1:
            raise ConfigError(f"--instances must be positive, got {values['instances']}")
        if values["max_dim"] < 1 or values["max_denom"] < 1:
            raise ConfigError("--max-dim and --max-denom must be positive")
        return cls(**values)

    def digest(self) -> str:
        """Digest of the parameters that determine a suite report."""
        data = asdict(self)
        relevant = {k: data[k] for k in ("command", "seed", "instances", "max_dim", "max_denom", "budget", "steps")}
        relevant["eps"] = None if self.eps is None else format_rational(self.eps)
        return sha256_hex(repr(sorted(relevant.items())))


def _pick(flags: Dict[str, Any], key: str, default: Any) -> Any:
    value = flags.get(key)
    return default if value is None else value
