import asyncio
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Type

from sqlalchemy.ext.asyncio import AsyncSession, async_sessionmaker

from .. import db_ops
from ..codec import digest, write_json
from ..errors import ConfigError, ToolkitError
from ..run_config import RunConfig
from .arrow_suites import ArrowCalculusSuite, PerturbationSuite
from .base_suite import BaseSuite
from .catalog_suites import CatalogSuite, NormingSuite
from .engine_suites import ApproximationSuite, EngineAuditSuite, SkeletonSuite
from .error_handler import EXIT_FAILED, EXIT_OK, handle_toolkit_error
from .pushout_suites import ComplementedPushoutSuite, CorrectionSuite, MultiPushoutSuite, PushoutIsometrySuite

SUITES: Dict[str, Type[BaseSuite]] = {
    suite.name: suite
    for suite in (
        PushoutIsometrySuite, ArrowCalculusSuite, ComplementedPushoutSuite, MultiPushoutSuite,
        CorrectionSuite, PerturbationSuite, CatalogSuite, EngineAuditSuite, ApproximationSuite, SkeletonSuite, NormingSuite,
    )
}


def resolve_suites(name: str) -> List[str]:
    if name == "all":
        return list(SUITES)
    if name not in SUITES:
        raise ConfigError(f"unknown suite {name!r}; expected one of {', '.join(SUITES)} or all")
    return [name]


class SuiteOrchestrator:
    """Runs suites in order, writes their reports and compares them with earlier runs of the same parameters."""

    def __init__(
        self,
        config: RunConfig,
        strings: Dict[str, Any],
        async_session_maker: Optional[async_sessionmaker[AsyncSession]],
        parent_logger: logging.Logger,
    ):
        self.config = config
        self.strings = strings
        self.async_session_maker = async_session_maker
        self.logger = parent_logger.getChild(self.__class__.__name__)
        self.reports: Dict[str, Dict[str, Any]] = {}

    async def _check_history(self, name: str, report_digest: str, report: Dict[str, Any], path: Optional[Path]) -> bool:
        """Records the run; False when an earlier run with the same seed and parameters produced another report."""
        if self.async_session_maker is None:
            return True
        config_digest = self.config.digest()
        try:
            async with self.async_session_maker() as session:
                async with session.begin():
                    previous = await db_ops.latest_run(session, name, self.config.seed, config_digest)
                    await db_ops.record_run(
                        session, name, self.config.seed, config_digest, report_digest,
                        report["passed"], len(report["instances"]), str(path) if path else None,
                    )
        except Exception as db_e:
            self.logger.error(f"Failed to record run of {name} in history: {db_e}", exc_info=True)
            raise
        if previous is not None and previous.report_digest != report_digest:
            self.logger.warning(
                f"Report of {name} (seed {self.config.seed}) differs from run {previous.id}: "
                f"{previous.report_digest[:12]} -> {report_digest[:12]}"
            )
            return False
        return True

    async def run_suite(self, name: str) -> int:
        suite = SUITES[name](self.config, self.logger, self.strings)
        self.logger.info(f"Running {name}: {suite.instance_count} instances, seed {self.config.seed}")
        try:
            report = await asyncio.to_thread(suite.run)
        except ToolkitError as e:
            return handle_toolkit_error(e, self.logger, self.strings)
        report_digest = digest(report)
        path = write_json(self.config.out / f"{name}.json", report) if self.config.out else None
        deterministic = await self._check_history(name, report_digest, report, path)
        report_view = self.strings["verify"]
        total = len(report["instances"])
        passed = total - len(report["failed"])
        status = report_view["status_pass"] if report["passed"] else report_view["status_fail"]
        print(report_view["summary"].format(
            suite=name, passed=passed, total=total, skipped=report["skipped"], status=status, digest=report_digest[:12],
        ))
        if not deterministic:
            print(report_view["nondeterministic"].format(suite=name, seed=self.config.seed))
        self.reports[name] = report
        return EXIT_OK if report["passed"] and deterministic else EXIT_FAILED

    async def run(self, names: List[str]) -> int:
        exit_code = EXIT_OK
        for name in names:
            exit_code = max(exit_code, await self.run_suite(name))
        self.logger.info(f"Finished {len(names)} suite(s) with exit code {exit_code}")
        return exit_code
