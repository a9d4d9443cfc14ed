import logging
from dataclasses import replace

from ..errors import NonRationalMultiplicity
from ..induction import FixedChild, MemberRef, evaluate, multiplicity_series
from ..symbolic.bivariate import evaluate_t, lift, substitute_xt, t
from ..symbolic.linear import LinearForm
from ..symbolic.quadext import QuadExtElement
from ..symbolic.ratfunc import RationalFunction, x
from .equations import Solution, assemble
from .families import BackwardPathDirected

logger = logging.getLogger(__name__)


def _simplify(value):
    if isinstance(value, QuadExtElement) and value.is_rational():
        return value.a
    return value


def solve_backward_path_system(family: BackwardPathDirected) -> Solution:
    graph = family.graph
    m = graph.m
    a = family.a_loops
    fixed = [
        (graph.node(child.target), child.multiplicity)
        for child in graph.general_rules[family.family].children
        if isinstance(child, FixedChild)
    ]

    # A(t) (t K(t) - 1) = t N(t) - A(0) with K(t) = 1 - a x - x^2 t/(1 - x t)
    N = LinearForm(lift(x**m) / (1 - lift(x) * t))
    for w, p in fixed:
        shift = lift(x ** (m + 1 - graph.length(w)))
        N = N + LinearForm.unknown(w, shift * substitute_xt(multiplicity_series(p, m)))
    t0 = QuadExtElement.generator(a)
    chain = [N.map(lambda c: t0 * evaluate_t(c, t0))]

    def extend(j: int) -> None:
        # v_j ~> v_0..v_(j-1), v_j^a, v_(j+1), W, solved for F_(v_(j+1))
        k = m + j
        following = chain[j] * (1 - a * x) - x**k
        for i in range(j):
            following = following - chain[i] * x ** (j - i + 1)
        for w, p in fixed:
            count = evaluate(p, k)
            if count is None:
                raise NonRationalMultiplicity(f"Multiplicity {p} is invalid at k={k}")
            if count:
                following = following - LinearForm.unknown(
                    w, count * x ** (k + 1 - graph.length(w))
                )
        chain.append(following)

    def chain_value(ref: MemberRef) -> LinearForm:
        j = ref.index - m
        while len(chain) <= j:
            extend(len(chain) - 1)
        return chain[j]

    solution = assemble(graph, chain_value)
    logger.debug("Backward path solution with a=%d: %s", a, solution.gf)
    return replace(
        solution,
        gf=_simplify(solution.gf),
        components={label: _simplify(value) for label, value in solution.components.items()},
    )


def solve_backward_path(family: BackwardPathDirected) -> QuadExtElement | RationalFunction:
    return solve_backward_path_system(family).gf
