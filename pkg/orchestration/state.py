"""
ClusterDilog — Selftest State Schema

The selftest runs many acceptance jobs and folds their outcomes into one state
object. Annotated fields with operator.add are append-only: each finished job
adds to them and nothing overwrites earlier entries.
"""

import operator
from typing import Annotated

from typing_extensions import TypedDict

from models.cdl_models import CommandReport, JobSummary


class SelftestState(TypedDict):
    """Accumulated results of one selftest invocation."""

    rng_seed: int
    full: bool
    jobs: Annotated[list[JobSummary], operator.add]
    reports: Annotated[list[CommandReport], operator.add]
    error_log: Annotated[list[str], operator.add]


APPEND_ONLY = ("jobs", "reports", "error_log")


def initial_state(rng_seed: int = 0, full: bool = False) -> SelftestState:
    return {"rng_seed": rng_seed, "full": full, "jobs": [], "reports": [], "error_log": []}


def merge_state_update(current: SelftestState, update: dict) -> SelftestState:
    """Merge a partial update; append-only lists are extended, never replaced."""
    merged = current.copy()
    for key, value in update.items():
        if key in APPEND_ONLY:
            merged[key] = merged.get(key, []) + list(value)
        else:
            merged[key] = value
    return merged
