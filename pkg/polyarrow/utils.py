import hashlib
import os
import re
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, Optional, Union

import yaml
from sympy import Rational

from .errors import ConfigError

PACKAGE_DIR = Path(__file__).resolve().parent
DIMENSION_CAP_ENV = "POLYARROW_DIMENSION_CAP"
DEFAULT_DIMENSION_CAP = 8

_RATIONAL_RE = re.compile(r"[+-]?\d+(/\d+)?")


def parse_rational(value: Union[str, int, list, tuple, Rational]) -> Rational:
    """
    Parses an exact rational.
    Accepts "p/q", "p", an integer, or a (numerator, denominator) pair of decimal strings.
    """
    if isinstance(value, Rational):
        return value
    if isinstance(value, bool):
        raise ConfigError(f"Not a rational: {value!r}")
    if isinstance(value, int):
        return Rational(value)
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ConfigError(f"Rational pair must have two entries: {value!r}")
        num, den = (parse_rational(part) for part in value)
        if den == 0:
            raise ConfigError(f"Zero denominator in {value!r}")
        return num / den
    text = str(value).strip()
    if not _RATIONAL_RE.fullmatch(text):
        raise ConfigError(f"Not an exact rational: {value!r}")
    num, _, den = text.partition("/")
    den_value = int(den) if den else 1
    if den_value == 0:
        raise ConfigError(f"Zero denominator in {value!r}")
    return Rational(int(num), den_value)


def format_rational(value: Rational) -> str:
    value = Rational(value)
    return str(value.p) if value.q == 1 else f"{value.p}/{value.q}"


@lru_cache(maxsize=None)
def _read_yaml(path: str) -> Dict[str, Any]:
    with open(path, "r", encoding="utf-8") as handle:
        return yaml.safe_load(handle) or {}


def load_config(path: Optional[Union[str, Path]] = None) -> Dict[str, Any]:
    """Returns the `config:` section of config.yaml (the packaged one by default)."""
    target = Path(path) if path else PACKAGE_DIR / "config.yaml"
    try:
        data = _read_yaml(str(target))
    except FileNotFoundError as e:
        raise ConfigError(f"Config file not found: {target}") from e
    except yaml.YAMLError as e:
        raise ConfigError(f"Malformed config file {target}: {e}") from e
    return dict(data.get("config", {}))


def load_strings(lang: str = "en") -> Dict[str, Any]:
    return _read_yaml(str(PACKAGE_DIR / "strings" / f"{lang}.yaml"))


def dimension_cap() -> int:
    raw = os.environ.get(DIMENSION_CAP_ENV)
    if raw:
        try:
            cap = int(raw)
        except ValueError as e:
            raise ConfigError(f"{DIMENSION_CAP_ENV} must be an integer, got {raw!r}") from e
        if cap < 1:
            raise ConfigError(f"{DIMENSION_CAP_ENV} must be positive, got {cap}")
        return cap
    return int(load_config().get("dimension_cap", DEFAULT_DIMENSION_CAP))


def sha256_hex(data: Union[str, bytes]) -> str:
    if isinstance(data, str):
        data = data.encode("utf-8")
    return hashlib.sha256(data).hexdigest()
