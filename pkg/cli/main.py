"""
ClusterDilog — CLI Entry Point

Parses flags into a Command, routes it, and writes the report. Standard
logging records from the engine are forwarded to a loguru sink on stderr so
stdout carries nothing but the report.
"""

import argparse
import logging
import sys
from pathlib import Path

import yaml
from loguru import logger as log_sink

from core.settings import setting
from models.cdl_models import Command, CommandReport
from orchestration.router import EXIT_INPUT, run_command

logger = logging.getLogger(__name__)


class UsageError(Exception):
    """Flag parsing failed."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


class InterceptHandler(logging.Handler):
    """Hand stdlib log records to loguru, keeping level and origin."""

    def emit(self, record: logging.LogRecord) -> None:
        try:
            level = log_sink.level(record.levelname).name
        except ValueError:
            level = record.levelno
        log_sink.opt(exception=record.exc_info).bind(origin=record.name).log(level, record.getMessage())


def configure_logging(level: str | None = None) -> None:
    level = (level or setting("logging", "level", "INFO")).upper()
    log_sink.remove()
    log_sink.configure(extra={"origin": "cdl"})
    log_sink.add(sys.stderr, level=level, format="{time:HH:mm:ss} | {level: <7} | {extra[origin]} | {message}")
    logging.basicConfig(handlers=[InterceptHandler()], level=level, force=True)


def int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.replace(" ", "").split(",") if part]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--rng-seed", type=int, default=setting("cli", "rng_seed", 0))
    p.add_argument("--tol", type=float, default=setting("dilog", "tolerance", 1e-9))
    p.add_argument("--degree", type=int, default=None)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--out", type=Path, default=None)
    p.add_argument("--log-level", default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cdl", description="Cluster patterns, dilogarithm identities and scattering diagrams.")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    for name in ("mutate", "verify-di"):
        p = sub.add_parser(name)
        p.add_argument("--matrix", type=Path, help="Matrix JSON {\"b\": rows, \"delta\": [...]} or bare rows")
        p.add_argument("--type", choices=("A2", "B2", "G2"))
        p.add_argument("--word", type=int_list, help="1-indexed directions k0,k1,...")
        _common(p)

    p = sub.add_parser("ysystem")
    p.add_argument("--x", required=True, help="Dynkin type X, e.g. A3")
    p.add_argument("--xp", required=True, help="Dynkin type X'")
    p.add_argument("--kappa", type=int, choices=(1, -1), default=1)
    p.add_argument("--symbolic", action="store_true", help="also run F-polynomials over a half period")
    _common(p)

    p = sub.add_parser("csd")
    p.add_argument("--delta", type=int_list, required=True)
    p.add_argument("--loop", action="store_true", help="check the formal loop identity")
    p.add_argument("--gfan", action="store_true", help="check that G-fan rays lie on walls")
    _common(p)

    p = sub.add_parser("qdi")
    p.add_argument("--type", choices=("A2", "B2", "G2"))
    p.add_argument("--form", choices=("tropical", "universal"), default="tropical")
    p.add_argument("--case", choices=("a1affine", "a2twisted"))
    _common(p)

    p = sub.add_parser("coxeter")
    p.add_argument("--dynkin", required=True)
    p.add_argument("--kappa", type=int, choices=(1, -1), default=1)
    _common(p)

    p = sub.add_parser("constant-ysystem")
    p.add_argument("--dynkin", required=True)
    p.add_argument("--level", type=int, required=True)
    _common(p)

    p = sub.add_parser("selftest")
    p.add_argument("--full", action="store_true", help="include the long-running jobs")
    _common(p)
    return parser


COMMON = ("subcommand", "rng_seed", "tol", "degree", "samples", "format", "out", "log_level")


def to_command(args: argparse.Namespace) -> Command:
    options = {k: (str(v) if isinstance(v, Path) else v) for k, v in vars(args).items()
               if k not in COMMON and v is not None}
    return Command(subcommand=args.subcommand, options=options, rng_seed=args.rng_seed,
                   tolerance=args.tol, degree=args.degree, samples=args.samples)


def render(report: CommandReport, fmt: str = "json") -> str:
    if fmt == "text":
        return yaml.safe_dump(report.model_dump(mode="json", by_alias=True), sort_keys=False, allow_unicode=True)
    return report.model_dump_json(by_alias=True, indent=2)


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        configure_logging()
        logger.error("usage: %s", exc)
        print(render(CommandReport(command="usage", passed=False, errors=[str(exc)])))
        return EXIT_INPUT
    configure_logging(args.log_level)
    try:
        command = to_command(args)
    except ValueError as exc:
        logger.error("invalid options: %s", exc)
        print(render(CommandReport(command=args.subcommand, passed=False, errors=[str(exc)]), args.format))
        return EXIT_INPUT
    code, report = run_command(command)
    text = render(report, args.format)
    if args.out is not None:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(text + "\n", encoding="utf-8")
    else:
        print(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
