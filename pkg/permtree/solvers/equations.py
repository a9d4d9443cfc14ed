from typing import TypeAlias
import logging
from dataclasses import dataclass
from typing import Callable

from ..induction import MemberRef
from ..symbolic.linear import Coefficient, LinearForm, solve_linear_system
from ..symbolic.ratfunc import x
from .families import LabelGraph

logger = logging.getLogger(__name__)

ChainValue: TypeAlias = Callable[[MemberRef], LinearForm]


@dataclass(frozen=True)
class Solution:
    gf: Coefficient
    components: dict[str, Coefficient]
    determinant: Coefficient


def node_equations(graph: LabelGraph, chain_value: ChainValue) -> list[LinearForm]:
    """F_w = x^|w| + sum over children c of x^(|w|+1-|c|) F_c, one per node of W."""
    equations = []
    for w in graph.W:
        length = graph.length(w)
        equation = LinearForm.unknown(w) - x**length
        for child, multiplicity in graph.children(w):
            shift = x ** (length + 1 - graph.length(child))
            if graph.in_w(child):
                term = LinearForm.unknown(child, shift)
            else:
                term = chain_value(child) * shift
            equation = equation - term * multiplicity
        equations.append(equation)
    return equations


def assemble(graph: LabelGraph, chain_value: ChainValue) -> Solution:
    equations = node_equations(graph, chain_value)
    logger.debug("Solving %d node equations", len(equations))
    solution = solve_linear_system(equations, graph.W)

    def value(node) -> Coefficient:
        node = graph.node(node)
        if graph.in_w(node):
            return solution[node]
        return chain_value(node).evaluate(solution.values)

    components = {graph.label(w): solution[w] for w in graph.W}
    for name in graph.families:
        ref = MemberRef(name, graph.m)
        components[graph.label(ref)] = value(ref)
    return Solution(value(graph.rules.root), components, solution.determinant)
