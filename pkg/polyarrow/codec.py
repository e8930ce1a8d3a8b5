import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

from sympy import Basic, ImmutableMatrix, Rational

from .arrows import ArrowClass, DoubleArrow, Operator
from .catalog import ArrowCatalog, CatalogEntry
from .certificates import Certificate, Check
from .engine import AuditReport, ConstructionState, EngineParams, LedgerEntry, SeriesReport, StepRecord
from .errors import ConfigError
from .geometry import Polytope
from .linalg import matrix, zero
from .pushout import PushoutResult
from .spaces import NormedSpace, from_vertices
from .utils import format_rational, parse_rational, sha256_hex

FORMAT_VERSION = 1


def encode_rational(value) -> List[str]:
    """Rational as a [numerator, denominator] pair of decimal strings."""
    value = Rational(value)
    return [str(value.p), str(value.q)]


def decode_rational(data) -> Rational:
    return parse_rational(data)


def encode_vector(v: Sequence) -> List[List[str]]:
    return [encode_rational(x) for x in v]


def decode_vector(data) -> tuple:
    return tuple(decode_rational(x) for x in data)


def encode_matrix(M: ImmutableMatrix) -> Dict[str, Any]:
    return {"shape": [M.rows, M.cols], "rows": [encode_vector(M.row(r)) for r in range(M.rows)]}


def decode_matrix(data) -> ImmutableMatrix:
    if isinstance(data, dict):
        rows, cols = data["shape"]
        if rows == 0 or cols == 0:
            return zero(rows, cols)
        return matrix([decode_vector(row) for row in data["rows"]], shape=(rows, cols))
    return matrix([decode_vector(row) for row in data])


def encode_value(value: Any) -> Any:
    """Certificate values and notes: sympy rationals as pairs, counts as integers, symbolic values as text."""
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, float):
        raise ConfigError(f"floating-point value {value!r} cannot be emitted")
    if isinstance(value, Rational):
        return encode_rational(value)
    if isinstance(value, ArrowClass):
        return encode_class(value)
    if isinstance(value, ImmutableMatrix):
        return encode_matrix(value)
    if isinstance(value, (list, tuple)):
        return [encode_value(v) for v in value]
    if isinstance(value, dict):
        return {str(k): encode_value(v) for k, v in value.items()}
    if isinstance(value, Basic):
        return str(value)
    return str(value)


def encode_polytope(P: Polytope) -> Dict[str, Any]:
    return {"dim": P.ambient_dim, "vertices": [encode_vector(v) for v in P.vertices]}


def encode_space(X: NormedSpace) -> Dict[str, Any]:
    data = encode_polytope(X.ball)
    data["facets"] = [encode_vector(f) for f in X.facets]
    data["label"] = X.label
    return data


def decode_space(data: Dict[str, Any]) -> NormedSpace:
    """
    A space from its JSON form. Files written by `encode_space` carry facets and
    are taken as canonical; hand-written files (vertices only) are re-hulled.
    """
    try:
        dim = int(data["dim"])
        vertices = [decode_vector(v) for v in data["vertices"]]
    except (KeyError, TypeError, ValueError) as e:
        raise ConfigError(f"malformed space JSON: {e}") from e
    label = data.get("label", "")
    if "facets" not in data:
        return from_vertices(vertices, label)
    facets = tuple(sorted(decode_vector(f) for f in data["facets"]))
    ball = Polytope(dim, tuple(sorted(vertices)), True, facets)
    return NormedSpace(dim, ball, label)


def encode_operator(T: Operator) -> Dict[str, Any]:
    return {"domain": encode_space(T.domain), "codomain": encode_space(T.codomain), "matrix": encode_matrix(T.matrix)}


def decode_operator(data: Dict[str, Any]) -> Operator:
    return Operator(decode_space(data["domain"]), decode_space(data["codomain"]), decode_matrix(data["matrix"]))


def encode_arrow(d: DoubleArrow) -> Dict[str, Any]:
    return {"fwd": encode_operator(d.fwd), "back": encode_operator(d.back)}


def decode_arrow(data: Dict[str, Any]) -> DoubleArrow:
    return DoubleArrow(decode_operator(data["fwd"]), decode_operator(data["back"]))


def encode_class(cls: ArrowClass) -> Dict[str, Any]:
    return {
        "alpha": encode_rational(cls.alpha),
        "beta": encode_rational(cls.beta),
        "gamma": encode_rational(cls.gamma),
        "contractive": cls.contractive,
    }


def decode_class(data: Dict[str, Any]) -> ArrowClass:
    return ArrowClass(
        decode_rational(data["alpha"]), decode_rational(data["beta"]), decode_rational(data["gamma"]),
        bool(data["contractive"]),
    )


def encode_certificate(cert: Certificate) -> Dict[str, Any]:
    return {
        "subject": cert.subject,
        "passed": cert.passed,
        "checks": [
            {
                "name": c.name,
                "relation": c.relation,
                "lhs": None if c.lhs is None else encode_rational(c.lhs),
                "rhs": None if c.rhs is None else encode_rational(c.rhs),
                "passed": c.passed,
                "gated": c.gated,
            }
            for c in cert.checks
        ],
        "values": encode_value(cert.values),
    }


def decode_certificate(data: Dict[str, Any]) -> Certificate:
    """Checks come back exactly; values stay in their encoded form."""
    checks = [
        Check(
            c["name"], c["relation"],
            None if c["lhs"] is None else decode_rational(c["lhs"]),
            None if c["rhs"] is None else decode_rational(c["rhs"]),
            bool(c["passed"]), bool(c["gated"]),
        )
        for c in data.get("checks", [])
    ]
    return Certificate(data["subject"], checks, dict(data.get("values", {})))


def encode_pushout(po: PushoutResult) -> Dict[str, Any]:
    return {
        "space": encode_space(po.po),
        "i": encode_operator(po.i),
        "j": encode_operator(po.j),
        "i_prime": encode_operator(po.i_prime),
        "j_prime": encode_operator(po.j_prime),
        "quotient_map": encode_operator(po.quotient_map),
        "lift": encode_matrix(po.lift),
        "certificate": encode_certificate(po.certificate),
    }


def encode_catalog(catalog: ArrowCatalog) -> Dict[str, Any]:
    return {
        "spaces": [encode_space(X) for X in catalog.spaces],
        "entries": [
            {"arrow": encode_arrow(e.arrow), "source": e.source_index, "target": e.target_index}
            for e in catalog.entries
        ],
        "resolution": encode_rational(catalog.resolution),
        "seed": catalog.seed,
        "params": encode_value(catalog.params),
    }


def decode_catalog(data: Dict[str, Any]) -> ArrowCatalog:
    spaces = tuple(decode_space(s) for s in data["spaces"])
    entries = tuple(CatalogEntry(decode_arrow(e["arrow"]), int(e["source"]), int(e["target"])) for e in data["entries"])
    return ArrowCatalog(spaces, entries, decode_rational(data["resolution"]), int(data["seed"]), dict(data.get("params", {})))


def _encode_params(params: EngineParams) -> Dict[str, int]:
    return {
        "grid_levels": params.grid_levels,
        "max_denom": params.max_denom,
        "grid_budget": params.grid_budget,
        "max_entries": params.max_entries,
        "max_dim": params.max_dim,
        "seed": params.seed,
    }


def encode_state(state: ConstructionState) -> Dict[str, Any]:
    return {
        "version": FORMAT_VERSION,
        "stages": [encode_space(P) for P in state.stages],
        "inclusions": [encode_arrow(d) for d in state.inclusions],
        "ledger": [
            {
                "step": record.step,
                "entries": [
                    {
                        "position": e.position,
                        "stage": e.stage,
                        "index": e.index,
                        "catalog_index": e.catalog_index,
                        "grid_level": e.grid_level,
                        "probe": encode_arrow(e.probe),
                    }
                    for e in record.entries
                ],
                "pending": [list(key) for key in record.pending],
                "certificate": encode_certificate(record.certificate),
            }
            for record in state.ledger
        ],
        "catalog": encode_catalog(state.catalog),
        "params": _encode_params(state.params),
    }


def decode_state(data: Dict[str, Any]) -> ConstructionState:
    """Push-out extensions are not stored; they are rebuilt on demand from the ledger."""
    if data.get("version") != FORMAT_VERSION:
        raise ConfigError(f"unsupported state format version {data.get('version')!r}")
    try:
        ledger = tuple(
            StepRecord(
                int(record["step"]),
                tuple(
                    LedgerEntry(
                        int(record["step"]), int(e["position"]), int(e["stage"]), int(e["index"]),
                        int(e["catalog_index"]), int(e["grid_level"]), decode_arrow(e["probe"]),
                    )
                    for e in record["entries"]
                ),
                tuple((int(i), int(j)) for i, j in record["pending"]),
                decode_certificate(record["certificate"]),
            )
            for record in data["ledger"]
        )
        return ConstructionState(
            tuple(decode_space(P) for P in data["stages"]),
            tuple(decode_arrow(d) for d in data["inclusions"]),
            ledger,
            decode_catalog(data["catalog"]),
            EngineParams(**{k: int(v) for k, v in data["params"].items()}),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise ConfigError(f"malformed state JSON: {e}") from e


def encode_report(report: AuditReport) -> Dict[str, Any]:
    return {
        "outcome": report.outcome,
        "target": encode_arrow(report.target),
        "probe": encode_arrow(report.probe),
        "stage": report.stage,
        "eps": encode_rational(report.eps),
        "found_step": report.found_step,
        "extension": None if report.extension is None else encode_arrow(report.extension),
        "defects": None if report.defects is None else [encode_rational(x) for x in report.defects],
        "extension_class": None if report.extension_class is None else encode_class(report.extension_class),
        "match_defect": None if report.match_defect is None else encode_rational(report.match_defect),
        "grid_defect": None if report.grid_defect is None else encode_rational(report.grid_defect),
        "certificate": None if report.certificate is None else encode_certificate(report.certificate),
        "notes": encode_value(report.notes),
    }


def decode_report(data: Dict[str, Any]) -> AuditReport:
    def optional(key, decoder):
        return None if data.get(key) is None else decoder(data[key])

    return AuditReport(
        data["outcome"],
        decode_arrow(data["target"]),
        decode_arrow(data["probe"]),
        int(data["stage"]),
        decode_rational(data["eps"]),
        data.get("found_step"),
        optional("extension", decode_arrow),
        optional("defects", lambda xs: tuple(decode_rational(x) for x in xs)),
        optional("extension_class", decode_class),
        optional("match_defect", decode_rational),
        optional("grid_defect", decode_rational),
        optional("certificate", decode_certificate),
        dict(data.get("notes", {})),
    )


def encode_series(series: SeriesReport) -> Dict[str, Any]:
    return {
        "reports": [encode_report(r) for r in series.reports],
        "monotone": series.monotone,
        "violations": list(series.violations),
    }


ENCODERS = {
    "space": encode_space,
    "operator": encode_operator,
    "arrow": encode_arrow,
    "class": encode_class,
    "certificate": encode_certificate,
    "catalog": encode_catalog,
    "state": encode_state,
    "report": encode_report,
}

DECODERS = {
    "space": decode_space,
    "operator": decode_operator,
    "arrow": decode_arrow,
    "class": decode_class,
    "certificate": decode_certificate,
    "catalog": decode_catalog,
    "state": decode_state,
    "report": decode_report,
}


def kind_of(obj: Any) -> str:
    for kind, cls in (
        ("space", NormedSpace), ("operator", Operator), ("arrow", DoubleArrow), ("class", ArrowClass),
        ("certificate", Certificate), ("catalog", ArrowCatalog), ("state", ConstructionState),
        ("report", AuditReport),
    ):
        if isinstance(obj, cls):
            return kind
    raise ConfigError(f"no JSON form for {type(obj).__name__}")


def encode(obj: Any) -> Dict[str, Any]:
    return ENCODERS[kind_of(obj)](obj)


def decode(kind: str, data: Dict[str, Any]) -> Any:
    if kind not in DECODERS:
        raise ConfigError(f"unknown object kind {kind!r}; expected one of {', '.join(sorted(DECODERS))}")
    return DECODERS[kind](data)


def dumps(data: Any) -> str:
    """Canonical text: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def digest(data: Any) -> str:
    return sha256_hex(dumps(data))


def write_json(path: Union[str, Path], data: Any) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(data), encoding="utf-8")
    return path


def read_json(path: Union[str, Path]) -> Any:
    path = Path(path)
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError as e:
        raise ConfigError(f"file not found: {path}") from e
    except json.JSONDecodeError as e:
        raise ConfigError(f"malformed JSON in {path}: {e}") from e


def load(kind: str, path: Union[str, Path]) -> Any:
    return decode(kind, read_json(path))


def describe(value: Optional[Rational]) -> str:
    return "-" if value is None else format_rational(value)
