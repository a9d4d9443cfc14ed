import pytest

from ..errors import PoleAtEvaluationPoint
from .bivariate import (
    coefficient_of_t,
    coefficient_of_t1,
    evaluate_t,
    is_free_of_t,
    lift,
    project,
    substitute_xt,
    t,
)
from .quadext import QuadExtElement
from .ratfunc import Qx, x


def test_lift_is_free_of_t():
    f = lift(x / (1 - x))
    assert is_free_of_t(f)
    assert project(f) == x / (1 - x)


def test_project_rejects_t():
    with pytest.raises(ValueError):
        project(lift(x) * t)


def test_substitute_xt():
    f = substitute_xt(1 / (1 - x))
    assert f == 1 / (1 - lift(x) * t)
    assert evaluate_t(f, Qx.one) == 1 / (1 - x)
    assert coefficient_of_t(f, 3) == x**3


@pytest.mark.parametrize(
    "expr, at, expected",
    [
        (lift(x) * t**2 + 1, Qx(2), 4 * x + 1),
        (t / (1 - lift(x) * t), Qx.zero, Qx.zero),
        (lift(1 / (1 - x)), Qx(5), 1 / (1 - x)),
        (t / (1 + t), x, x / (1 + x)),
    ],
)
def test_evaluate_t(expr, at, expected):
    assert evaluate_t(expr, at) == expected


def test_evaluate_t_at_a_pole():
    with pytest.raises(PoleAtEvaluationPoint):
        evaluate_t(1 / (1 - t), Qx.one)


def test_evaluate_t_at_kernel_root():
    t0 = QuadExtElement.generator(1)
    value = evaluate_t(t / (1 - lift(x) * t), t0)
    assert value.series_expand(5) == [1, 2, 5, 14, 42, 132]


def test_coefficient_of_t():
    expr = lift(x) * t / (1 - lift(x) * t)
    assert coefficient_of_t(expr, 0) == 0
    assert coefficient_of_t1(expr) == x
    assert coefficient_of_t(expr, 4) == x**4


def test_coefficient_of_t_with_pole_at_zero():
    with pytest.raises(PoleAtEvaluationPoint):
        coefficient_of_t(1 / t, 1)
