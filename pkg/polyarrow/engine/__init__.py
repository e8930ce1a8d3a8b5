from .approximation import ApproxRound, approx_round, stage_arrow
from .audit import audit_extension, audit_series
from .construction import (
    candidate_at, extension_at, init, run, stage_candidates, stage_inclusion,
    stage_projection, step, step_extension,
)
from .skeleton import skeleton_check
from .state import AuditReport, ConstructionState, EngineParams, LedgerEntry, SeriesReport, StepRecord

__all__ = [
    "ApproxRound", "approx_round", "stage_arrow",
    "audit_extension", "audit_series",
    "candidate_at", "extension_at", "init", "run", "stage_candidates", "stage_inclusion",
    "stage_projection", "step", "step_extension",
    "skeleton_check",
    "AuditReport", "ConstructionState", "EngineParams", "LedgerEntry", "SeriesReport", "StepRecord",
]
