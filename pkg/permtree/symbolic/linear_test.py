import pytest

from ..errors import SingularSystem
from .linear import LinearForm, solve_linear_system
from .quadext import QuadExtElement
from .ratfunc import Qx, value_at_zero, x


def F(name: str, coefficient=1) -> LinearForm:
    return LinearForm.unknown(name, coefficient)


def binary_example_system():
    # 1 ~> 12, 21; 12 ~> 312; 21 ~> 12^2, 321 with the chain values given
    f312 = x**3 / (1 - 2 * x)
    f321 = (x**3 + 2 * x**4) / (1 - 2 * x)
    return [
        F("1") - x - F("12") - F("21"),
        F("21") - x**2 - F("12", 2 * x) - f321,
        F("12") - x**2 - f312,
    ]


def test_binary_example_system():
    equations = binary_example_system()
    solution = solve_linear_system(equations, ["1", "21", "12"])
    assert solution["1"] == x / (1 - 2 * x)
    assert solution["12"] == x**2 * (1 - x) / (1 - 2 * x)
    assert solution["21"] == x**2 * (1 + x) / (1 - 2 * x)
    assert value_at_zero(solution.determinant) == 1
    assert all(not r for r in solution.residuals(equations))


def test_finite_transfer_system():
    M = [[1, 1, 0], [1, 1, 1], [1, 1, 2]]
    names = ["y1", "y2", "y3"]
    equations = [
        F(names[i]) - sum((F(names[j], x * M[i][j]) for j in range(3)), LinearForm()) - 1
        for i in range(3)
    ]
    solution = solve_linear_system(equations, names)
    assert x * solution["y1"] == x * (1 - 2 * x) / ((1 - x) * (1 - 3 * x))
    assert value_at_zero(solution.determinant) == 1


def test_quadratic_extension_coefficients():
    t0 = QuadExtElement.generator(1)
    equations = [F("y", 1 - x * t0) - 1]
    solution = solve_linear_system(equations, ["y"])
    assert solution["y"].series_expand(5) == [1, 1, 2, 5, 14, 42]
    assert all(not r for r in solution.residuals(equations))


def test_singular_system():
    equations = [F("a") + F("b") - 1, F("a", 2) + F("b", 2) - 2]
    with pytest.raises(SingularSystem):
        solve_linear_system(equations, ["a", "b"])


def test_system_must_be_square():
    with pytest.raises(ValueError):
        solve_linear_system([F("a") - 1], ["a", "b"])


def test_undeclared_unknown():
    with pytest.raises(ValueError):
        solve_linear_system([F("a") + F("b") - 1], ["a"])


def test_empty_system():
    assert solve_linear_system([], []).values == {}


def test_linear_form_algebra():
    form = (F("a", x) + 2) * (1 + x) - F("a", x)
    assert form.constant == 2 + 2 * x
    assert form.coefficient("a") == x**2
    assert form.substitute({"a": F("b") + 1}).evaluate({"b": Qx.one}) == 2 + 2 * x + 2 * x**2
    assert (F("a") - F("a")).unknowns == set()
