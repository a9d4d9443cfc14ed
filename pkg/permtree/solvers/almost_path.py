from ..induction import FixedChild, MemberRef, multiplicity_series
from ..symbolic.linear import LinearForm
from ..symbolic.ratfunc import RationalFunction, x
from .equations import Solution, assemble
from .families import AlmostPathDirected


def solve_almost_path_system(family: AlmostPathDirected) -> Solution:
    graph = family.graph

    def chain_value(ref: MemberRef) -> LinearForm:
        # F_{v_k} = x^k/(1-x) + sum_w x^(k+1-|w|) (sum_j p_w(k+j) x^j) F_w
        value = LinearForm(x**ref.index / (1 - x))
        for child in graph.general_rules[ref.family].children:
            if isinstance(child, FixedChild):
                w = graph.node(child.target)
                shift = x ** (ref.index + 1 - graph.length(w))
                series = multiplicity_series(child.multiplicity, ref.index)
                value = value + LinearForm.unknown(w, shift * series)
        return value

    return assemble(graph, chain_value)


def solve_almost_path(family: AlmostPathDirected) -> RationalFunction:
    return solve_almost_path_system(family).gf
