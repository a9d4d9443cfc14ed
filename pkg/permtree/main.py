import argparse
import logging
import sys
from typing import Callable, Sequence

from .commands import classify, enumeration, rules, solve
from .commands.common import build_config
from .config import CliConfig
from .errors import PermtreeError

LOG_LEVELS = [logging.WARNING, logging.INFO, logging.DEBUG]

COMMANDS: dict[str, Callable[[CliConfig], int]] = {
    "enumerate": enumeration.enumerate_avoiders,
    "rules": rules.list_rules,
    "classify": classify.classify,
    "solve": solve.solve_patterns,
}


def _fail(error: PermtreeError) -> int:
    print(f"error: {error}", file=sys.stderr)
    return error.exit_code


def run(config: CliConfig) -> int:
    """Run config.command, writing its report to stdout; returns the exit code."""
    try:
        return COMMANDS[config.command](config)
    except PermtreeError as error:
        return _fail(error)


def main(argv: Sequence[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="permtree",
        description="generating trees and generating functions of pattern-avoiding permutations",
        add_help=True,
    )
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="log progress to stderr"
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    enumeration.subparser(subparsers)
    rules.subparser(subparsers)
    classify.subparser(subparsers)
    solve.subparser(subparsers)

    args = parser.parse_args(argv)
    logging.basicConfig(
        level=LOG_LEVELS[min(args.verbose, len(LOG_LEVELS) - 1)],
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        config = build_config(args)
    except PermtreeError as error:
        return _fail(error)
    return run(config)
