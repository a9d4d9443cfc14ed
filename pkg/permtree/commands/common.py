import argparse

from .. import catalog
from ..config import CliConfig, load_config
from ..errors import InvalidInput
from ..json import JSON, dumps as json_dumps
from ..perm import PatternSet
from ..yaml import dumps as yaml_dumps


def parse_patterns(text: str) -> PatternSet:
    """Comma-separated patterns, or @NAME for a set from the catalog."""
    text = text.strip()
    if text.startswith("@"):
        return catalog.get(text[1:])
    return PatternSet.parse(text)


def positive_int(value: str) -> int:
    try:
        number = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{value!r} is not an integer")
    if number < 1:
        raise argparse.ArgumentTypeError(f"{value!r} is not positive")
    return number


def add_common_arguments(parser: argparse.ArgumentParser):
    parser.add_argument(
        "patterns",
        nargs="?",
        help="patterns to avoid, e.g. 123,43215 or [3,1,2],[2,1,4,3] or @pell",
    )
    parser.add_argument(
        "--patterns",
        dest="patterns_option",
        metavar="PATTERNS",
        help="patterns to avoid, as an alternative to the positional argument",
    )
    parser.add_argument("--config", help="YAML file with default options")
    parser.add_argument("--max-n", type=positive_int, help="largest length to count")
    parser.add_argument("--depth", type=positive_int, help="fixed exploration depth")
    parser.add_argument(
        "--series-order", type=positive_int, help="number of series terms to report"
    )
    parser.add_argument(
        "--n-verify", type=positive_int, help="length up to which the oracle is checked"
    )
    parser.add_argument(
        "--node-budget", type=positive_int, help="maximum number of tree nodes to visit"
    )
    parser.add_argument(
        "--json",
        dest="output",
        action="store_const",
        const="json",
        help="write machine-readable JSON",
    )
    parser.add_argument(
        "--allow-conjecture",
        action="store_const",
        const=True,
        help="exit with 0 when only a reconstructed generating function was found",
    )


def build_config(args: argparse.Namespace) -> CliConfig:
    base = load_config(args.config) if getattr(args, "config", None) else CliConfig()
    text = args.patterns or args.patterns_option
    values = {
        "patterns": parse_patterns(text) if text else None,
        "command": args.command,
        **{
            name: getattr(args, name, None)
            for name in (
                "max_n",
                "depth",
                "series_order",
                "n_verify",
                "node_budget",
                "output",
                "allow_conjecture",
                "method",
            )
        },
    }
    config = base.merge(values)
    if config.patterns is None:
        raise InvalidInput("No patterns given, pass them as an argument or with --patterns")
    return config


def emit(data: JSON, config: CliConfig):
    if config.output == "json":
        print(json_dumps(data))
    else:
        print(yaml_dumps(data), end="")
