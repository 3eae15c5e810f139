"""Unit tests for the selftest job list and state folding."""

from models.cdl_models import Command, JobSummary
from orchestration.selftest import Job, acceptance_jobs, run_selftest
from orchestration.state import initial_state, merge_state_update


def test_merge_appends_lists():
    """Test that append-only fields grow and scalar fields are replaced."""
    state = initial_state(3)
    first = JobSummary(name="a", command="mutate", passed=True)
    second = JobSummary(name="b", command="csd", passed=False)
    state = merge_state_update(state, {"jobs": [first], "error_log": ["x"]})
    state = merge_state_update(state, {"jobs": [second], "full": True})
    assert [j.name for j in state["jobs"]] == ["a", "b"]
    assert state["error_log"] == ["x"]
    assert state["full"] is True
    assert state["rng_seed"] == 3


def test_acceptance_jobs():
    """Test that job names are unique and the long jobs are flagged."""
    jobs = acceptance_jobs()
    names = [j.name for j in jobs]
    assert len(names) == len(set(names))
    assert {j.name for j in jobs if j.full_only} == {"csd-1-5", "ysystem-D4-A2-symbolic"}
    assert {j.command.subcommand for j in jobs} == {
        "mutate", "verify-di", "ysystem", "coxeter", "constant-ysystem", "csd", "qdi"
    }


def test_run_selftest_keeps_job_order():
    """Test that results are folded in job order and failures are logged."""
    jobs = [
        Job("pentagon", Command(subcommand="verify-di", options={"type": "A2"}, samples=5)),
        Job("not-a-period", Command(subcommand="verify-di", options={"type": "A2", "word": [1, 2]})),
        Job("walls", Command(subcommand="csd", options={"delta": [1, 1]}, degree=6)),
        Job("skipped", Command(subcommand="csd", options={"delta": [1, 5]}, degree=16), full_only=True),
    ]
    state = run_selftest(jobs=jobs)
    assert [j.name for j in state["jobs"]] == ["pentagon", "not-a-period", "walls"]
    assert [j.passed for j in state["jobs"]] == [True, False, True]
    assert len(state["reports"]) == 3
    assert state["error_log"][0].startswith("not-a-period: PeriodMismatch")
