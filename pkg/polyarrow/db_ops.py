from typing import List, Optional

from sqlalchemy import select
from sqlalchemy.ext.asyncio import AsyncSession

from .db import SuiteRun


async def record_run(
    session: AsyncSession,
    suite: str,
    seed: int,
    config_digest: str,
    report_digest: str,
    passed: bool,
    instances: int,
    report_path: Optional[str] = None,
) -> SuiteRun:
    """Adds a SuiteRun row to the session, then flushes."""
    run = SuiteRun(
        suite=suite,
        seed=seed,
        config_digest=config_digest,
        report_digest=report_digest,
        passed=passed,
        instances=instances,
        report_path=report_path,
    )
    session.add(run)
    await session.flush()
    await session.refresh(run)
    return run


async def latest_run(session: AsyncSession, suite: str, seed: int, config_digest: str) -> Optional[SuiteRun]:
    """Most recent run of a suite with the same seed and parameters."""
    result = await session.execute(
        select(SuiteRun)
        .where(SuiteRun.suite == suite)
        .where(SuiteRun.seed == seed)
        .where(SuiteRun.config_digest == config_digest)
        .order_by(SuiteRun.id.desc())
        .limit(1)
    )
    return result.scalar_one_or_none()


async def list_runs(session: AsyncSession, suite: Optional[str] = None) -> List[SuiteRun]:
    stmt = select(SuiteRun).order_by(SuiteRun.id)
    if suite is not None:
        stmt = stmt.where(SuiteRun.suite == suite)
    result = await session.execute(stmt)
    return list(result.scalars().all())
