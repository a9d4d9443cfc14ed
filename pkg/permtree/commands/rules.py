from ..config import CliConfig
from ..solvers import compress
from .common import add_common_arguments, emit


def list_rules(config: CliConfig) -> int:
    rules = compress(config.patterns, config.depth, config.node_budget)
    emit(
        {
            "patterns": str(config.patterns),
            "depth": rules.ruleset.depth_explored,
            "certificate": rules.certificate,
            "families": [str(family) for family in rules.families.values()],
            "fixed_rules": [str(rule) for rule in rules.fixed_rules.values()],
            "general_rules": [
                rule.format(rules.families) for rule in rules.general_rules.values()
            ],
        },
        config,
    )
    return 0


def subparser(subparsers):
    parser = subparsers.add_parser(
        "rules",
        help="print the succession rules of the generating tree, compressed into families",
    )
    add_common_arguments(parser)
