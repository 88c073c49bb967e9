"""Argument parsing for the fvn command"""

import argparse
import logging
from pathlib import Path
from typing import Sequence

from pydantic import ValidationError

from core.config import settings

from .commands import run, write_error
from .models import Command, OutputFormat, RunConfig

logger = logging.getLogger(__name__)

HELP = {
    Command.COMPILE: "Compile a network or transition system into its ASSR",
    Command.QUOTIENT: "Quotient under output equivalence",
    Command.CHECK: "Bisimulation verdict and output-language comparison",
    Command.AGGREGATE: "Replace the declared blocks by their quotients",
    Command.SIMULATE: "Simulate an aggregated network document",
    Command.EXPORT_DOT: "Render the network graph as DOT",
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output-dir", type=Path, default=None, help=f"Artifact directory (default: {settings.OUTPUT_DIR})")
    common.add_argument("--horizon", type=int, default=None, help=f"Steps to explore (default: {settings.DEFAULT_HORIZON})")
    common.add_argument("--seed", type=int, default=None, help=f"PCG64 seed (default: {settings.DEFAULT_SEED})")
    common.add_argument("--size-cap", type=int, default=None, help="Largest number of ASSR columns to compile")
    common.add_argument("--mode", choices=["boolean-nondet", "probabilistic"], default=None)
    common.add_argument("--format", choices=[fmt.value for fmt in OutputFormat], default=None)
    common.add_argument("--strict", action="store_true", default=None, help="Refuse blocks that are not aggregate-able")
    common.add_argument("--log-level", type=str.upper, default=None, help=f"Log level (default: {settings.LOG_LEVEL})")
    common.add_argument("--inputs", default=None, help='Control words per step, e.g. "111,121"; "-" for an autonomous step')
    common.add_argument("--initial", default=None, help="One digit per aggregated state node")

    parser = argparse.ArgumentParser(prog="fvn", description="Finite-valued network aggregation toolkit")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in Command:
        sub = subparsers.add_parser(command.value, parents=[common], help=HELP[command])
        sub.add_argument("input", type=Path)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    options = {key: value for key, value in vars(args).items() if value is not None}
    try:
        config = RunConfig(**options)
    except ValidationError as exc:
        output_dir = args.output_dir or Path(settings.OUTPUT_DIR)
        errors = [{"field": ".".join(str(part) for part in error["loc"]), "message": error["msg"]} for error in exc.errors()]
        logger.error(f"Invalid options: {errors}")
        write_error(output_dir, {"error": "invalid_input", "message": "Invalid options", "fields": errors})
        return 1

    if config.log_level:
        logging.getLogger().setLevel(config.log_level)
    logger.info(f"Running {config.command.value} on {config.input}")
    return run(config)
