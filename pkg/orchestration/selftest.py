"""
ClusterDilog — Acceptance Selftest

The acceptance jobs as plain Commands routed through run_command. Jobs run in
a thread pool; results are folded into the SelftestState in job order, so the
report is the same whatever order the jobs finish in. Jobs marked full-only
(the degree-16 non-affine diagram, symbolic Y-systems above rank 4) run only
with --full.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import NamedTuple

from core.settings import setting
from core.ysystem.bipartite import ade_pairs
from models.cdl_models import Command, CommandReport, JobSummary
from orchestration.router import run_command
from orchestration.state import SelftestState, initial_state, merge_state_update

logger = logging.getLogger(__name__)


class Job(NamedTuple):
    name: str
    command: Command
    full_only: bool = False


def _cmd(subcommand: str, rng_seed: int, degree: int | None = None, samples: int | None = None, **options) -> Command:
    return Command(subcommand=subcommand, options=options, rng_seed=rng_seed, degree=degree, samples=samples)


def acceptance_jobs(rng_seed: int = 0) -> list[Job]:
    jobs = [Job(f"mutate-{name}", _cmd("mutate", rng_seed, type=name)) for name in ("A2", "B2", "G2")]
    jobs += [Job(f"di-{name}", _cmd("verify-di", rng_seed, samples=100, type=name)) for name in ("A2", "B2", "G2")]
    jobs += [
        Job(f"ysystem-{x}-{xp}", _cmd("ysystem", rng_seed, samples=20, x=x, xp=xp, symbolic=True))
        for x, xp in (("A2", "A1"), ("A2", "A2"), ("A3", "A2"))
    ]
    jobs += [
        Job(f"ysystem-tropical-{x}-{xp}", _cmd("ysystem", rng_seed, samples=2, x=x, xp=xp))
        for x, xp in ade_pairs(16)
    ]
    jobs.append(Job("ysystem-D4-A2-symbolic", _cmd("ysystem", rng_seed, samples=5, x="D4", xp="A2", symbolic=True), True))
    jobs += [Job(f"coxeter-{t}", _cmd("coxeter", rng_seed, dynkin=t)) for t in ("A5", "A6", "D5", "D6", "E6")]
    jobs += [
        Job(f"constant-{t}-{level}", _cmd("constant-ysystem", rng_seed, dynkin=t, level=level))
        for t, level in (("A1", 2), ("A1", 3), ("A2", 2), ("A3", 2))
    ]
    jobs += [
        Job(f"csd-{d1}-{d2}", _cmd("csd", rng_seed, 12, delta=[d1, d2], gfan=True))
        for d1, d2 in ((1, 1), (1, 2), (1, 3))
    ]
    jobs += [
        Job("csd-2-2", _cmd("csd", rng_seed, 7, delta=[2, 2])),
        Job("csd-1-4", _cmd("csd", rng_seed, 7, delta=[1, 4])),
        Job("csd-1-5", _cmd("csd", rng_seed, 16, delta=[1, 5]), True),
        Job("loop-1-1", _cmd("csd", rng_seed, 10, delta=[1, 1], loop=True)),
        Job("loop-2-2", _cmd("csd", rng_seed, 4, delta=[2, 2], loop=True)),
        Job("qdi-kernel", _cmd("qdi", rng_seed, 8)),
        Job("qdi-A2-tropical", _cmd("qdi", rng_seed, 8, type="A2", form="tropical")),
        Job("qdi-A2-universal", _cmd("qdi", rng_seed, 8, type="A2", form="universal")),
        Job("qdi-B2-tropical", _cmd("qdi", rng_seed, 6, type="B2", form="tropical")),
        Job("qdi-G2-tropical", _cmd("qdi", rng_seed, 6, type="G2", form="tropical")),
        Job("qcsd-a1affine", _cmd("qdi", rng_seed, 4, case="a1affine")),
        Job("qcsd-a2twisted", _cmd("qdi", rng_seed, 4, case="a2twisted")),
    ]
    return jobs


def _summary(job: Job, code: int, report: CommandReport) -> JobSummary:
    return JobSummary(name=job.name, command=job.command.subcommand, passed=code == 0, errors=report.errors)


def run_selftest(rng_seed: int = 0, full: bool = False, jobs: list[Job] | None = None) -> SelftestState:
    """Run the acceptance jobs and return the folded state."""
    state = initial_state(rng_seed, full)
    selected = [j for j in (acceptance_jobs(rng_seed) if jobs is None else jobs) if full or not j.full_only]
    workers = setting("cli", "workers", 4)
    logger.info("selftest: %d jobs on %d workers", len(selected), workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        outcomes = list(pool.map(lambda job: run_command(job.command), selected))
    for job, (code, report) in zip(selected, outcomes):
        summary = _summary(job, code, report)
        update = {"jobs": [summary], "reports": [report]}
        if not summary.passed:
            update["error_log"] = [f"{job.name}: {'; '.join(report.errors) or 'checks failed'}"]
        state = merge_state_update(state, update)
        logger.info("selftest %-28s %s", job.name, "ok" if summary.passed else "FAILED")
    return state
