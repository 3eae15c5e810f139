"""
ClusterDilog — Command Routing

Every subcommand is dispatched from this file only. A handler returns
(passed, payload); run_command wraps it in a CommandReport and maps failures to
the exit-code contract: 0 all checks pass, 2 a verification failed, 1 the input
was unusable.
"""

import json
import logging
from pathlib import Path
from typing import Callable

from core.dilog.period_di import verify_period_di
from core.dilog.wedge import vt_check, wedge_report
from core.errors import ClusterDilogError, PeriodMismatch, VerificationError
from core.pattern.engine import MutationWord, di_weights, run_pattern
from core.pattern.periodicity import detect_period, verify_dualities
from core.pattern.separation import separation_y
from core.quantum.identities import (
    classical_limit_check,
    qcsd_sides,
    qcsd_wall_identity,
    verify_q_binomial,
    verify_q_pentagon,
    verify_qdi_tropical,
    verify_qdi_universal,
    verify_quantum_synchronicity,
)
from core.scatter.diagram import build_rank2_csd, diagram_report, g_fan_embedding_check
from core.scatter.identities import loop_di_report, period_relation_check
from core.seed.catalog import named_matrix, named_word
from core.seed.matrix import ExchangeMatrix
from core.settings import setting
from core.ysystem.bipartite import as_dynkin, build_bipartite_word
from core.ysystem.constant import constant_ysystem_solve
from core.ysystem.coxeter import coxeter_orbit, format_root, longest_element_check
from core.ysystem.recurrence import verify_ysystem_di
from core.ysystem.tropical import symbolic_run, tropical_run
from models.cdl_models import Command, CommandReport

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2

Handler = Callable[[Command], tuple[bool, dict]]


def load_matrix(options: dict) -> ExchangeMatrix:
    """--matrix FILE (Matrix JSON or bare rows) or --type A2|B2|G2."""
    path = options.get("matrix")
    if path:
        data = json.loads(Path(path).read_text())
        if isinstance(data, list):
            return ExchangeMatrix.from_rows(data)
        return ExchangeMatrix.from_json(data)
    name = options.get("type")
    if not name:
        raise ValueError("either --matrix or --type is required")
    return named_matrix(name)


def load_word(options: dict, matrix: ExchangeMatrix) -> MutationWord:
    word = options.get("word")
    if not word:
        if not options.get("type") or options.get("matrix"):
            raise ValueError("--word is required with --matrix")
        word = named_word(options["type"])
    return MutationWord.of(matrix, word)


def _mutate(command: Command) -> tuple[bool, dict]:
    matrix = load_matrix(command.options)
    run = run_pattern(load_word(command.options, matrix))
    nu = detect_period(run)
    payload = run.to_json()
    payload["c_plus"] = [list(c) for c in run.c_plus]
    payload["period"] = list(nu) if nu is not None else None
    payload["weights"] = di_weights(run).model_dump()
    payload["dualities"] = verify_dualities(run).model_dump()
    payload["y"] = [[str(separation_y(run, s, i)) for i in range(1, run.rank + 1)] for s in range(run.length + 1)]
    return True, payload


def _verify_di(command: Command) -> tuple[bool, dict]:
    matrix = load_matrix(command.options)
    run = run_pattern(load_word(command.options, matrix))
    nu = detect_period(run)
    if nu is None:
        raise PeriodMismatch(f"word {list(run.word.dirs)} is not a period of {matrix}")
    di = verify_period_di(run, nu, command.samples, command.tolerance, command.rng_seed)
    wedge = wedge_report(run)
    vt = vt_check(run)
    ell = command.degree if command.degree is not None else setting("scatter", "loop_degree", 10)
    relation = period_relation_check(run, ell=ell)
    payload = {
        "period": list(nu),
        "di": di.model_dump(),
        "wedge": wedge.model_dump(),
        "vt": vt.model_dump(),
        "group_relation": {"degree": ell, "passed": relation},
    }
    return di.passed and wedge.passed and vt.passed and relation, payload


def _ysystem(command: Command) -> tuple[bool, dict]:
    x, xp = command.options.get("x"), command.options.get("xp")
    if not x or not xp:
        raise ValueError("ysystem needs --x and --xp")
    kappa = command.options.get("kappa") or 1
    tropical = tropical_run(x, xp, kappa)
    payload = {"tropical": tropical.model_dump()}
    passed = tropical.passed
    if command.options.get("symbolic"):
        _, symbolic = symbolic_run(x, xp, kappa)
        payload["symbolic"] = symbolic.model_dump()
        passed = passed and symbolic.passed
        ell = command.degree if command.degree is not None else setting("scatter", "loop_degree", 10)
        relation = period_relation_check(run_pattern(build_bipartite_word(x, xp, kappa)), ell=ell)
        payload["group_relation"] = {"degree": ell, "passed": relation}
        passed = passed and relation
    samples = command.samples if command.samples is not None else 20
    tol = max(command.tolerance, 1e-8)
    di = verify_ysystem_di(x, xp, samples, tol, command.rng_seed, kappa)
    payload["di"] = di.model_dump()
    return passed and di.passed, payload


def _csd(command: Command) -> tuple[bool, dict]:
    delta = command.options.get("delta")
    if not delta or len(delta) != 2:
        raise ValueError("csd needs --delta d1,d2")
    d = build_rank2_csd(delta, command.degree)
    report = diagram_report(d)
    payload = {"diagram": report.model_dump()}
    passed = report.consistent
    if command.options.get("loop"):
        loop = loop_di_report(d)
        payload["loop"] = loop.model_dump()
        passed = passed and loop.passed
    if command.options.get("gfan"):
        embedded = g_fan_embedding_check(delta, d.trunc)
        payload["gfan_embedded"] = embedded
        passed = passed and embedded
    return passed, payload


def _qdi(command: Command) -> tuple[bool, dict]:
    ell = command.degree if command.degree is not None else setting("quantum", "degree", 8)
    case, name = command.options.get("case"), command.options.get("type")
    checks = []
    if case:
        checks.append(qcsd_wall_identity(case, ell))
        checks.append(classical_limit_check(qcsd_sides(case, ell), ell))
    elif name:
        run = run_pattern(MutationWord.of(named_matrix(name), named_word(name)))
        form = command.options.get("form") or "tropical"
        if form == "tropical":
            checks.append(verify_qdi_tropical(run, ell))
        elif form == "universal":
            checks.append(verify_qdi_universal(run, ell))
        else:
            raise ValueError(f"unknown --form {form!r}, expected tropical or universal")
        checks.append(verify_quantum_synchronicity(run, ell))
    else:
        checks.append(verify_q_pentagon(ell))
        checks.append(verify_q_binomial(ell))
    return all(c.passed for c in checks), {"checks": [c.model_dump() for c in checks]}


def _coxeter(command: Command) -> tuple[bool, dict]:
    t = as_dynkin(command.options.get("dynkin") or "")
    kappa = command.options.get("kappa") or 1
    orbits = {str(a): [format_root(r) for r in coxeter_orbit(t, a, kappa)] for a in range(1, t.rank + 1)}
    longest = longest_element_check(t, kappa)
    return longest, {"dynkin": t.name, "coxeter_number": t.coxeter_number, "orbits": orbits,
                     "longest_element": longest}


def _constant_ysystem(command: Command) -> tuple[bool, dict]:
    level = command.options.get("level")
    if level is None:
        raise ValueError("constant-ysystem needs --level")
    _, report = constant_ysystem_solve(command.options.get("dynkin") or "", int(level))
    return report.passed, {"solution": report.model_dump()}


def _selftest(command: Command) -> tuple[bool, dict]:
    from orchestration.selftest import run_selftest

    state = run_selftest(command.rng_seed, full=bool(command.options.get("full")))
    jobs = [job.model_dump() for job in state["jobs"]]
    return all(job["passed"] for job in jobs), {"jobs": jobs, "failed": state["error_log"]}


HANDLERS: dict[str, Handler] = {
    "mutate": _mutate,
    "verify-di": _verify_di,
    "ysystem": _ysystem,
    "csd": _csd,
    "qdi": _qdi,
    "coxeter": _coxeter,
    "constant-ysystem": _constant_ysystem,
    "selftest": _selftest,
}


def run_command(command: Command) -> tuple[int, CommandReport]:
    """
    Dispatch a command and return (exit code, report). Verification failures
    name the first failing identity; everything else the engine rejects is an
    input error.
    """
    handler = HANDLERS.get(command.subcommand)
    if handler is None:
        report = CommandReport(command=command.subcommand, passed=False,
                               errors=[f"unknown subcommand {command.subcommand!r}"])
        return EXIT_INPUT, report
    logger.info("running %s with %s", command.subcommand, command.options)
    try:
        passed, payload = handler(command)
    except VerificationError as exc:
        logger.error("%s: verification failed: %s", command.subcommand, exc)
        return EXIT_VERIFY, CommandReport(command=command.subcommand, passed=False,
                                          errors=[f"{type(exc).__name__}: {exc}"])
    except (ClusterDilogError, ValueError, IndexError, KeyError, OSError) as exc:
        logger.error("%s: bad input: %s", command.subcommand, exc)
        return EXIT_INPUT, CommandReport(command=command.subcommand, passed=False,
                                         errors=[f"{type(exc).__name__}: {exc}"])
    code = EXIT_OK if passed else EXIT_VERIFY
    if not passed:
        logger.warning("%s finished with failing checks", command.subcommand)
    return code, CommandReport(command=command.subcommand, passed=passed, payload=payload)
