import logging

from ..config import CliConfig
from ..errors import Unclassified
from ..solvers import solve
from .common import add_common_arguments, emit

logger = logging.getLogger(__name__)


def solve_patterns(config: CliConfig) -> int:
    report = solve(config.patterns, config)
    emit(report.to_json() if config.output == "json" else report.to_text(), config)
    if report.conjectural and not config.allow_conjecture:
        logger.warning("The generating function is conjectural, see --allow-conjecture")
        return Unclassified.exit_code
    return 0


def subparser(subparsers):
    parser = subparsers.add_parser(
        "solve",
        help="compute the generating function of the avoiders and verify it",
    )
    add_common_arguments(parser)
