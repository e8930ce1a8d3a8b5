import asyncio

from polyarrow import db_ops
from polyarrow.db import history_engine, open_history


async def _exercise_history(path):
    engine = history_engine(str(path))
    try:
        session_maker = await open_history(engine)
        async with session_maker() as session:
            async with session.begin():
                await db_ops.record_run(session, "norming", 0, "c" * 64, "a" * 64, True, 2, "out/norming.json")
                await db_ops.record_run(session, "norming", 0, "c" * 64, "b" * 64, False, 2)
                await db_ops.record_run(session, "skeleton", 1, "d" * 64, "e" * 64, True, 5)
        async with session_maker() as session:
            latest = await db_ops.latest_run(session, "norming", 0, "c" * 64)
            missing = await db_ops.latest_run(session, "norming", 1, "c" * 64)
            every = await db_ops.list_runs(session)
            norming = await db_ops.list_runs(session, "norming")
        return latest, missing, every, norming
    finally:
        await engine.dispose()


def test_history_keeps_the_latest_run(tmp_path):
    latest, missing, every, norming = asyncio.run(_exercise_history(tmp_path / "history.sqlite3"))
    assert latest.report_digest == "b" * 64
    assert not latest.passed
    assert latest.report_path is None
    assert missing is None
    assert [run.suite for run in every] == ["norming", "norming", "skeleton"]
    assert len(norming) == 2
    assert "norming" in repr(latest)


def test_urls_are_passed_through():
    engine = history_engine("sqlite+aiosqlite:///:memory:")
    assert str(engine.url) == "sqlite+aiosqlite:///:memory:"
    asyncio.run(engine.dispose())
