from ..config import CliConfig
from ..perm import count_avoiders
from ..solvers import compress, series_dp
from .common import add_common_arguments, emit


def enumerate_avoiders(config: CliConfig) -> int:
    B = config.patterns
    if config.method == "rules":
        rules = compress(B, config.depth, config.node_budget)
        counts = series_dp(rules, config.max_n).as_ints()[1:]
    else:
        counts = count_avoiders(B, config.max_n, config.node_budget)
    if config.output == "json":
        emit({"patterns": str(B), "method": config.method, "counts": counts}, config)
    else:
        print(" ".join(map(str, counts)))
    return 0


def subparser(subparsers):
    parser = subparsers.add_parser(
        "enumerate",
        help="count the permutations of length 1..max-n avoiding the patterns",
    )
    add_common_arguments(parser)
    parser.add_argument(
        "--method",
        choices=("oracle", "rules"),
        help="count by brute force (oracle, default) or along the induced rules",
    )
