from typing import TypeAlias
from sympy import QQ
from sympy.polys.fields import FracElement, field
from sympy.polys.rings import PolyElement

from ..errors import PoleAtEvaluationPoint
from .quadext import QuadExtElement
from .ratfunc import Polynomial, Qx, RationalFunction, Rx

Qxt, xt_x, xt_t = field("x,t", QQ)
Rxt = Qxt.ring

BivariateRF: TypeAlias = FracElement
EvaluationPoint: TypeAlias = int | RationalFunction | QuadExtElement

t = xt_t


def _lift_poly(p: Polynomial, diagonal: bool = False) -> PolyElement:
    return Rxt.from_dict({(i, i if diagonal else 0): c for (i,), c in p.terms()})


def lift(f: RationalFunction | int) -> BivariateRF:
    """Embed a rational function of x into Q(x, t)."""
    f = Qx(f)
    return Qxt.new(_lift_poly(f.numer), _lift_poly(f.denom))


def substitute_xt(f: RationalFunction) -> BivariateRF:
    """f(x) -> f(x·t)"""
    return Qxt.new(_lift_poly(f.numer, diagonal=True), _lift_poly(f.denom, diagonal=True))


def _t_coefficients(p: PolyElement) -> list[RationalFunction]:
    by_power: dict[int, dict] = {}
    for (i, j), c in p.terms():
        by_power.setdefault(j, {})[(i,)] = c
    top = max(by_power, default=0)
    return [Qx(Rx.from_dict(by_power.get(j, {}))) for j in range(top + 1)]


def is_free_of_t(expr: BivariateRF) -> bool:
    return all(j == 0 for (_, j) in expr.numer.monoms()) and all(
        j == 0 for (_, j) in expr.denom.monoms()
    )


def project(expr: BivariateRF) -> RationalFunction:
    if not is_free_of_t(expr):
        raise ValueError(f"{expr.as_expr()} depends on t")
    return _t_coefficients(expr.numer)[0] / _t_coefficients(expr.denom)[0]


def _horner(coefficients: list[RationalFunction], at: EvaluationPoint):
    if isinstance(at, QuadExtElement):
        value = QuadExtElement.rational(0, at.a_loops)
    else:
        value = Qx.zero
    for coefficient in reversed(coefficients):
        value = value * at + coefficient
    return value


def evaluate_t(expr: BivariateRF, at: EvaluationPoint) -> RationalFunction | QuadExtElement:
    denominator = _horner(_t_coefficients(expr.denom), at)
    if not denominator:
        raise PoleAtEvaluationPoint(f"{expr.as_expr()} has a pole at t = {at}")
    return _horner(_t_coefficients(expr.numer), at) / denominator


def coefficient_of_t(expr: BivariateRF, power: int) -> RationalFunction:
    """[t^power] of the expansion of expr around t = 0."""
    numerator = _t_coefficients(expr.numer)
    denominator = _t_coefficients(expr.denom)
    if not denominator[0]:
        raise PoleAtEvaluationPoint(f"{expr.as_expr()} has a pole at t = 0")
    quotient: list[RationalFunction] = []
    for k in range(power + 1):
        value = numerator[k] if k < len(numerator) else Qx.zero
        for i in range(1, min(k, len(denominator) - 1) + 1):
            value -= denominator[i] * quotient[k - i]
        quotient.append(value / denominator[0])
    return quotient[power]


def coefficient_of_t1(expr: BivariateRF) -> RationalFunction:
    return coefficient_of_t(expr, 1)
