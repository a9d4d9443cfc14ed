import logging

from ..errors import NonRationalMultiplicity, PoleAtEvaluationPoint
from ..induction import (
    FixedChild,
    MemberChild,
    MemberRef,
    RangeChild,
    constant_value,
    multiplicity_series,
)
from ..symbolic.bivariate import (
    Qxt,
    coefficient_of_t,
    evaluate_t,
    is_free_of_t,
    lift,
    project,
    substitute_xt,
    t,
)
from ..symbolic.linear import LinearForm
from ..symbolic.ratfunc import Qx, RationalFunction, x
from .equations import Solution, assemble
from .families import AlphaGrowing, LabelGraph

logger = logging.getLogger(__name__)


def _constant(child: MemberChild) -> int:
    value = constant_value(child.multiplicity)
    if value is None:
        raise NonRationalMultiplicity(
            f"Multiplicity {child.multiplicity} of {child.family} is not constant"
        )
    return value


def chain_series(graph: LabelGraph, order: tuple[str, ...]) -> dict[str, LinearForm]:
    """A_g(t) = sum_j F_(v_j of g) t^j for every family, as forms in the F_w of W.

    Families are solved in order; a family may refer to the series of earlier
    ones and, through its forward edge, to its own.
    """
    m = graph.m
    xt = lift(x)
    backward = lift(x) ** 2 * t / (1 - xt * t)
    series: dict[str, LinearForm] = {}
    at_zero: dict[str, LinearForm] = {}
    for name in order:
        K = Qxt.one
        N = LinearForm(lift(x**m) / (1 - xt * t))
        forward = 0
        for child in graph.general_rules[name].children:
            match child:
                case FixedChild(target, multiplicity):
                    w = graph.node(target)
                    shift = lift(x ** (m + 1 - graph.length(w)))
                    weight = substitute_xt(multiplicity_series(multiplicity, m))
                    N = N + LinearForm.unknown(w, shift * weight)
                case RangeChild(family, _) if family == name:
                    K = K - backward
                case RangeChild(family, _):
                    N = N + series[family] * backward
                case MemberChild(family, 0, _):
                    c = _constant(child)
                    if family == name:
                        K = K - c * xt
                    else:
                        N = N + series[family] * (c * xt)
                case MemberChild(family, 1, _):
                    c = _constant(child)
                    if family == name:
                        forward = c
                    elif c:
                        N = N + (series[family] - at_zero[family].map(lift)) * (c / t)
                case MemberChild(family, -1, _):
                    c = _constant(child)
                    previous = graph.node(MemberRef(family, m - 1))
                    N = N + LinearForm.unknown(previous, lift(c * x**2))
                    if family == name:
                        K = K - c * xt**2 * t
                    else:
                        N = N + series[family] * (c * xt**2 * t)
        if not forward:
            series[name] = N / K
            at_zero[name] = series[name].map(lambda c: evaluate_t(c, Qx.zero))
        else:
            # A (t K - c) = t N - c A(0); the root of t K = c fixes A(0)
            if not is_free_of_t(K):
                raise PoleAtEvaluationPoint(
                    f"Kernel of {name} depends on t and has no rational root"
                )
            kernel = project(K)
            root = forward / kernel
            logger.debug("Kernel root of %s: t = %s", name, root.as_expr())
            at_zero[name] = N.map(lambda c: evaluate_t(c, root) / kernel)
            series[name] = (N * t - at_zero[name].map(lift) * forward) / (t * K - forward)
    return series


def solve_alpha_growing_system(family: AlphaGrowing) -> Solution:
    graph = family.graph
    series = chain_series(graph, family.order)

    def chain_value(ref: MemberRef) -> LinearForm:
        power = ref.index - graph.m
        return series[ref.family].map(lambda c: coefficient_of_t(c, power))

    return assemble(graph, chain_value)


def solve_alpha_growing(family: AlphaGrowing) -> RationalFunction:
    return solve_alpha_growing_system(family).gf
