import argparse
import asyncio
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from . import codec
from .arrows import arrow_distance_search, certify_exactify, exactify_projection
from .catalog import gen_double_arrows, gen_spaces, match_arrow
from .db import history_engine, open_history
from .engine import EngineParams, approx_round, audit_extension, audit_series, init, step
from .errors import ConfigError, ToolkitError
from .pushout import pushout
from .run_config import RunConfig
from .spaces import l1, linf
from .utils import load_config, load_strings
from .verification import EXIT_CONFIG, EXIT_FAILED, EXIT_OK, SUITES, SuiteOrchestrator, handle_toolkit_error, resolve_suites

STATE_FILE = "state.json"
EXPORT_KINDS = ("state", "catalog", "stage", "inclusion", "probe", "certificate")


class PolyarrowCLI:
    def __init__(self, config_path: Optional[str] = None):
        self.config = load_config(config_path)
        self.S = load_strings("en")
        self.logger = logging.getLogger("polyarrow")

    @property
    def help_page(self) -> str:
        return self.S["help"].format(suites=", ".join(SUITES))

    def build_parser(self) -> argparse.ArgumentParser:
        parser = argparse.ArgumentParser(
            prog="polyarrow", description=self.help_page, formatter_class=argparse.RawDescriptionHelpFormatter,
        )
        parser.add_argument("--verbose", action="store_true", help="log at DEBUG level")
        commands = parser.add_subparsers(dest="command", required=True)

        space = commands.add_parser("space").add_subparsers(dest="action", required=True)
        for name in ("l1", "linf"):
            sub = space.add_parser(name)
            sub.add_argument("--dim", type=int, required=True)
            sub.add_argument("--out")
        sub = space.add_parser("from-json")
        sub.add_argument("file")
        sub.add_argument("--out")

        arrow = commands.add_parser("arrow").add_subparsers(dest="action", required=True)
        sub = arrow.add_parser("classify")
        sub.add_argument("file")
        sub = arrow.add_parser("exactify")
        sub.add_argument("file")
        sub.add_argument("--eps", required=True)
        sub.add_argument("--out")
        sub = arrow.add_parser("distance")
        sub.add_argument("first")
        sub.add_argument("second")
        sub.add_argument("--budget", type=int)

        po = commands.add_parser("pushout").add_subparsers(dest="action", required=True)
        sub = po.add_parser("build")
        sub.add_argument("--i", dest="i_file", required=True)
        sub.add_argument("--j", dest="j_file", required=True)
        sub.add_argument("--out", required=True)

        catalog = commands.add_parser("catalog").add_subparsers(dest="action", required=True)
        sub = catalog.add_parser("gen")
        sub.add_argument("--max-dim", type=int)
        sub.add_argument("--max-denom", type=int)
        sub.add_argument("--seed", type=int)
        sub.add_argument("--budget", type=int)
        sub.add_argument("--out", required=True)
        sub = catalog.add_parser("match")
        sub.add_argument("--arrow", required=True)
        sub.add_argument("--catalog", required=True)
        sub.add_argument("--eps", required=True)

        engine = commands.add_parser("engine").add_subparsers(dest="action", required=True)
        sub = engine.add_parser("run")
        sub.add_argument("--seed-space", required=True)
        sub.add_argument("--catalog", required=True)
        sub.add_argument("--steps", type=int, required=True)
        sub.add_argument("--budget", type=int, help="items pushed out per step")
        sub.add_argument("--seed", type=int)
        sub.add_argument("--out", required=True)
        sub = engine.add_parser("audit")
        sub.add_argument("--state", required=True)
        sub.add_argument("--target", required=True)
        sub.add_argument("--probe", required=True)
        sub.add_argument("--eps", required=True)
        sub.add_argument("--stage", type=int)
        sub.add_argument("--series", action="store_true", help="audit every prefix of the chain")
        sub.add_argument("--out")
        sub = engine.add_parser("approx")
        sub.add_argument("--arrow", required=True)
        sub.add_argument("--stage", required=True, help="(1, 0, 1)-arrow JSON or {\"basis\": [...]}")
        sub.add_argument("--eps", required=True)
        sub.add_argument("--out")

        verify = commands.add_parser("verify")
        verify.add_argument("suite")
        verify.add_argument("--instances", type=int)
        verify.add_argument("--max-dim", type=int)
        verify.add_argument("--max-denom", type=int)
        verify.add_argument("--seed", type=int)
        verify.add_argument("--eps")
        verify.add_argument("--budget", type=int)
        verify.add_argument("--steps", type=int)
        verify.add_argument("--out")
        verify.add_argument("--no-history", action="store_true", help="do not read or write the run history")

        export = commands.add_parser("export")
        export.add_argument("--state", required=True)
        export.add_argument("--object", required=True, help=f"one of {', '.join(EXPORT_KINDS)}, indexed as KIND:INDEX")
        export.add_argument("--format", choices=["json"], default="json")
        export.add_argument("--out", required=True)
        return parser

    def _emit(self, data: Any, out: Optional[str] = None) -> None:
        if out:
            codec.write_json(out, data)
        else:
            sys.stdout.write(codec.dumps(data))

    def _state_path(self, state: str) -> Path:
        path = Path(state)
        return path / STATE_FILE if path.is_dir() else path

    def cmd_space(self, args: argparse.Namespace) -> int:
        if args.action == "from-json":
            X = codec.decode_space({k: v for k, v in codec.read_json(args.file).items() if k != "facets"})
        else:
            X = (l1 if args.action == "l1" else linf)(args.dim)
        self._emit(codec.encode_space(X), args.out)
        return EXIT_OK

    def cmd_arrow(self, args: argparse.Namespace) -> int:
        if args.action == "distance":
            bound = arrow_distance_search(codec.load("arrow", args.first), codec.load("arrow", args.second), args.budget)
            found = bound.a is not None
            self._emit({
                "kind": "upper bound",
                "found": found,
                "epsilon": codec.encode_rational(bound.epsilon) if found else None,
                "contractive_epsilon": codec.encode_rational(bound.contractive_epsilon) if found else None,
                "log_bound": str(bound.log_bound) if found else None,
                "exact": bound.exact,
                "candidates": bound.candidates,
            })
            return EXIT_OK if found else EXIT_FAILED
        d = codec.load("arrow", args.file)
        if args.action == "classify":
            cls = d.arrow_class
            self._emit({"class": codec.encode_class(cls), "double": cls.is_double})
            return EXIT_OK
        eps = codec.decode_rational(args.eps)
        exact = exactify_projection(d, eps)
        cert = certify_exactify(d, eps, exact)
        self._emit({"arrow": codec.encode_arrow(exact), "certificate": codec.encode_certificate(cert)}, args.out)
        return EXIT_OK if cert.passed else EXIT_FAILED

    def cmd_pushout(self, args: argparse.Namespace) -> int:
        result = pushout(codec.load("operator", args.i_file), codec.load("operator", args.j_file))
        path = codec.write_json(Path(args.out) / "pushout.json", codec.encode_pushout(result))
        self.logger.info(f"Push-out of dimension {result.po.dim} written to {path}")
        return EXIT_OK

    def cmd_catalog(self, args: argparse.Namespace) -> int:
        if args.action == "gen":
            max_dim = args.max_dim if args.max_dim is not None else int(self.config.get("catalog_max_dim", 2))
            spaces = gen_spaces(max_dim, max_denom=args.max_denom)
            catalog = gen_double_arrows(spaces, max_denom=args.max_denom, seed=args.seed, budget=args.budget)
            self._emit(codec.encode_catalog(catalog), args.out)
            return EXIT_OK
        eps = codec.decode_rational(args.eps)
        catalog = codec.load("catalog", args.catalog)
        match = match_arrow(codec.load("arrow", args.arrow), catalog, eps)
        if match is None:
            self._emit({"matched": False})
            return EXIT_FAILED
        self._emit({
            "matched": match.defect <= eps,
            "entry": catalog.entries.index(match.entry),
            "a": codec.encode_operator(match.a),
            "b": codec.encode_operator(match.b),
            "defect": codec.encode_rational(match.defect),
            "exact": match.exact,
        })
        return EXIT_OK if match.defect <= eps else EXIT_FAILED

    def cmd_engine(self, args: argparse.Namespace) -> int:
        if args.action == "run":
            X = codec.load("space", args.seed_space)
            catalog = codec.load("catalog", args.catalog)
            state = init(X, catalog, EngineParams.from_config(max_entries=args.budget, seed=args.seed))
            for _ in range(args.steps):
                state = step(state)
                record = state.ledger[-1]
                print(self.S["engine"]["step"].format(
                    index=state.n, dim=state.stages[-1].dim, entries=len(record.entries), pending=len(record.pending),
                ))
            path = codec.write_json(Path(args.out) / STATE_FILE, codec.encode_state(state))
            print(self.S["engine"]["written"].format(stages=len(state.stages), path=path))
            return EXIT_OK

        eps = codec.decode_rational(args.eps)
        if args.action == "approx":
            stage_data = codec.read_json(args.stage)
            if "basis" in stage_data:
                stage = [codec.decode_vector(v) for v in stage_data["basis"]]
            else:
                stage = codec.decode_arrow(stage_data)
            result = approx_round(codec.load("arrow", args.arrow), stage, eps)
            self._emit({
                "corrected": codec.encode_arrow(result.corrected),
                "space": codec.encode_space(result.G1),
                "di": codec.encode_arrow(result.di),
                "dj": codec.encode_arrow(result.dj),
                "stage": codec.encode_arrow(result.stage),
                "certificate": codec.encode_certificate(result.certificate),
            }, args.out)
            return EXIT_OK

        state = codec.load("state", self._state_path(args.state))
        target = codec.load("arrow", args.target)
        probe = codec.load("arrow", args.probe)
        if args.series:
            series = audit_series(state, target, probe, eps)
            self._emit(codec.encode_series(series), args.out)
            failed = any(r.outcome == r.FAILED for r in series.reports)
            return EXIT_FAILED if failed or not series.monotone else EXIT_OK
        report = audit_extension(state, target, probe, eps, args.stage)
        defects = "-" if report.defects is None else ", ".join(codec.describe(x) for x in report.defects)
        self.logger.info(self.S["engine"]["audit"].format(stage=report.stage, outcome=report.outcome, defects=defects))
        self._emit(codec.encode_report(report), args.out)
        return EXIT_FAILED if report.outcome == report.FAILED else EXIT_OK

    def _select(self, state, kind: str, index: Optional[int]) -> Any:
        if kind == "state":
            return state
        if kind == "catalog":
            return state.catalog
        sources = {
            "stage": state.stages,
            "inclusion": state.inclusions,
            "probe": [e.probe for e in state.entries()],
            "certificate": [record.certificate for record in state.ledger],
        }
        items = sources[kind]
        if index is None or not 0 <= index < len(items):
            raise IndexError(index)
        return items[index]

    def cmd_export(self, args: argparse.Namespace) -> int:
        kind, _, raw_index = args.object.partition(":")
        if kind not in EXPORT_KINDS:
            raise ConfigError(f"unknown object kind {kind!r}; expected one of {', '.join(EXPORT_KINDS)}")
        try:
            index = int(raw_index) if raw_index else None
        except ValueError as e:
            raise ConfigError(f"object index must be an integer, got {raw_index!r}") from e
        state = codec.load("state", self._state_path(args.state))
        try:
            obj = self._select(state, kind, index)
        except IndexError:
            print(self.S["export"]["missing"].format(object=args.object, state=args.state), file=sys.stderr)
            return EXIT_FAILED
        data = codec.encode(obj)
        again = codec.decode(codec.kind_of(obj), json.loads(codec.dumps(data)))
        if codec.dumps(codec.encode(again)) != codec.dumps(data):
            print(self.S["export"]["roundtrip_failed"].format(kind=kind), file=sys.stderr)
            return EXIT_FAILED
        path = codec.write_json(args.out, data)
        print(self.S["export"]["written"].format(kind=kind, path=path))
        return EXIT_OK

    async def _verify(self, names: List[str], config: RunConfig) -> int:
        if not config.history:
            return await SuiteOrchestrator(config, self.S, None, self.logger).run(names)
        engine = history_engine(config.history_db)
        try:
            session_maker = await open_history(engine)
            return await SuiteOrchestrator(config, self.S, session_maker, self.logger).run(names)
        finally:
            await engine.dispose()

    def cmd_verify(self, args: argparse.Namespace) -> int:
        if args.suite != "all" and args.suite not in SUITES:
            print(self.S["verify"]["unknown_suite"].format(suite=args.suite, suites=", ".join(SUITES)), file=sys.stderr)
            print(self.help_page, file=sys.stderr)
            return EXIT_CONFIG
        names = resolve_suites(args.suite)
        config = RunConfig.build(
            "verify", self.config,
            seed=args.seed, instances=args.instances, max_dim=args.max_dim, max_denom=args.max_denom,
            eps=args.eps, budget=args.budget, steps=args.steps, out=args.out, no_history=args.no_history,
        )
        return asyncio.run(self._verify(names, config))

    def run(self, argv: Optional[List[str]] = None) -> int:
        parser = self.build_parser()
        try:
            args = parser.parse_args(argv)
        except SystemExit as e:
            return e.code if isinstance(e.code, int) else EXIT_OK
        logging.basicConfig(
            level=logging.DEBUG if args.verbose else logging.INFO,
            stream=sys.stderr,
            format="%(asctime)s %(name)s %(levelname)s: %(message)s",
        )
        handlers: Dict[str, Any] = {
            "space": self.cmd_space,
            "arrow": self.cmd_arrow,
            "pushout": self.cmd_pushout,
            "catalog": self.cmd_catalog,
            "engine": self.cmd_engine,
            "verify": self.cmd_verify,
            "export": self.cmd_export,
        }
        try:
            return handlers[args.command](args)
        except ToolkitError as e:
            return handle_toolkit_error(e, self.logger, self.S)
        except Exception as e:
            self.logger.error(f"Unexpected error in {args.command}: {e}", exc_info=True)
            return EXIT_FAILED


def main(argv: Optional[List[str]] = None) -> int:
    return PolyarrowCLI().run(argv)
