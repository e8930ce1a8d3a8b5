from typing import Optional

from sqlalchemy import Boolean, Index, Integer, String
from sqlalchemy.ext.asyncio import AsyncEngine, AsyncSession, async_sessionmaker, create_async_engine
from sqlalchemy.orm import DeclarativeBase, Mapped, mapped_column


class Base(DeclarativeBase):
    pass


class SuiteRun(Base):
    __tablename__ = 'suite_run'

    id: Mapped[int] = mapped_column(primary_key=True, autoincrement=True)
    suite: Mapped[str] = mapped_column(String, nullable=False)
    seed: Mapped[int] = mapped_column(Integer, nullable=False)
    config_digest: Mapped[str] = mapped_column(String(64), nullable=False)
    report_digest: Mapped[str] = mapped_column(String(64), nullable=False)
    passed: Mapped[bool] = mapped_column(Boolean, nullable=False)
    instances: Mapped[int] = mapped_column(Integer, nullable=False)
    report_path: Mapped[Optional[str]] = mapped_column(nullable=True)

    __table_args__ = (
        Index('ix_suite_seed_config', 'suite', 'seed', 'config_digest'),
    )

    def __repr__(self):
        status = '✓' if self.passed else '✗'
        return (f"SuiteRun(id={self.id}, suite={self.suite}, seed={self.seed}, config={self.config_digest[:8]}, "
                f"report={self.report_digest[:8]}, instances={self.instances}, {status})")


def history_engine(path: str) -> AsyncEngine:
    url = path if "://" in path else f"sqlite+aiosqlite:///{path}"
    return create_async_engine(url)


async def open_history(engine: AsyncEngine) -> async_sessionmaker[AsyncSession]:
    """Session factory for the run history; creates the table if needed."""
    async with engine.begin() as conn:
        await conn.run_sync(Base.metadata.create_all)
    return async_sessionmaker(engine, class_=AsyncSession, expire_on_commit=False)
