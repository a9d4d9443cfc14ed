from ..config import CliConfig
from ..solvers import classify_graph, compress
from .common import add_common_arguments, emit


def classify(config: CliConfig) -> int:
    rules = compress(config.patterns, config.depth, config.node_budget)
    family = classify_graph(rules)
    emit({"patterns": str(config.patterns), **family.to_json()}, config)
    return 0


def subparser(subparsers):
    parser = subparsers.add_parser(
        "classify",
        help="classify the label graph (finite, almost/backward path-directed, alpha-growing)",
    )
    add_common_arguments(parser)
