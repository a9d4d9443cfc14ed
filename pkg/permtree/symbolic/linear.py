from typing import TypeAlias
from dataclasses import dataclass, field
from itertools import chain
from typing import Any, Callable, Hashable, Iterable, Mapping, Sequence

from sympy.polys.matrices import DomainMatrix

from ..errors import SingularSystem
from .quadext import QuadExtElement
from .ratfunc import Qx

Unknown: TypeAlias = Hashable
Coefficient: TypeAlias = Any


def _prune(terms: Mapping[Unknown, Coefficient]) -> dict[Unknown, Coefficient]:
    return {unknown: c for unknown, c in terms.items() if c}


@dataclass(frozen=True)
class LinearForm:
    """constant + Σ coefficient·unknown, with coefficients of any field type."""

    constant: Coefficient = 0
    terms: Mapping[Unknown, Coefficient] = field(default_factory=dict)

    @classmethod
    def unknown(cls, unknown: Unknown, coefficient: Coefficient = 1) -> "LinearForm":
        return cls(0, {unknown: coefficient})

    @staticmethod
    def _lift(other) -> "LinearForm":
        return other if isinstance(other, LinearForm) else LinearForm(other)

    def __add__(self, other) -> "LinearForm":
        other = LinearForm._lift(other)
        terms = dict(self.terms)
        for unknown, c in other.terms.items():
            terms[unknown] = terms[unknown] + c if unknown in terms else c
        return LinearForm(self.constant + other.constant, _prune(terms))

    __radd__ = __add__

    def __neg__(self) -> "LinearForm":
        return self.map(lambda c: -c)

    def __sub__(self, other) -> "LinearForm":
        return self + (-LinearForm._lift(other))

    def __rsub__(self, other) -> "LinearForm":
        return LinearForm._lift(other) - self

    def __mul__(self, scalar: Coefficient) -> "LinearForm":
        return LinearForm(
            self.constant * scalar,
            _prune({unknown: c * scalar for unknown, c in self.terms.items()}),
        )

    def __rmul__(self, scalar: Coefficient) -> "LinearForm":
        return LinearForm(
            scalar * self.constant,
            _prune({unknown: scalar * c for unknown, c in self.terms.items()}),
        )

    def __truediv__(self, scalar: Coefficient) -> "LinearForm":
        return self.map(lambda c: c / scalar)

    def map(self, fn: Callable[[Coefficient], Coefficient]) -> "LinearForm":
        return LinearForm(
            fn(self.constant),
            _prune({unknown: fn(c) for unknown, c in self.terms.items()}),
        )

    @property
    def unknowns(self) -> set[Unknown]:
        return set(self.terms)

    def coefficient(self, unknown: Unknown) -> Coefficient:
        return self.terms.get(unknown, 0)

    def substitute(self, values: Mapping[Unknown, "LinearForm | Coefficient"]) -> "LinearForm":
        result = LinearForm(
            self.constant, {u: c for u, c in self.terms.items() if u not in values}
        )
        for unknown, c in self.terms.items():
            if unknown in values:
                result = result + LinearForm._lift(values[unknown]) * c
        return result

    def evaluate(self, values: Mapping[Unknown, Coefficient]) -> Coefficient:
        missing = self.unknowns - set(values)
        if missing:
            raise KeyError(f"No value for unknowns {sorted(map(str, missing))}")
        total = self.constant
        for unknown, c in self.terms.items():
            total = total + c * values[unknown]
        return total


@dataclass(frozen=True)
class LinearSolution:
    values: dict[Unknown, Coefficient]
    determinant: Coefficient

    def __getitem__(self, unknown: Unknown) -> Coefficient:
        return self.values[unknown]

    def residuals(self, equations: Iterable[LinearForm]) -> list[Coefficient]:
        return [equation.evaluate(self.values) for equation in equations]


def _matrix(
    equations: Sequence[LinearForm], unknowns: Sequence[Unknown]
) -> tuple[list[list[Coefficient]], list[Coefficient]]:
    declared = set(unknowns)
    for equation in equations:
        undeclared = equation.unknowns - declared
        if undeclared:
            raise ValueError(f"Equation refers to undeclared unknowns {undeclared}")
    matrix = [[equation.coefficient(u) for u in unknowns] for equation in equations]
    return matrix, [-equation.constant for equation in equations]


def solve_linear_system(
    equations: Sequence[LinearForm], unknowns: Sequence[Unknown]
) -> LinearSolution:
    """Solve the square system {equation = 0} for the given unknowns."""
    unknowns = list(unknowns)
    if len(equations) != len(unknowns):
        raise ValueError(
            f"Expected a square system, got {len(equations)} equations in {len(unknowns)} unknowns"
        )
    if not unknowns:
        return LinearSolution({}, Qx.one)
    matrix, rhs = _matrix(equations, unknowns)
    extension = next(
        (e for e in chain(*matrix, rhs) if isinstance(e, QuadExtElement)), None
    )
    if extension is not None:
        return _solve_quadext(matrix, rhs, unknowns, extension.a_loops)

    n = len(unknowns)
    K = Qx.to_domain()
    A = DomainMatrix([[K.convert(Qx(e)) for e in row] for row in matrix], (n, n), K)
    b = DomainMatrix([[K.convert(Qx(e))] for e in rhs], (n, 1), K)
    determinant = A.det()
    if not determinant:
        raise SingularSystem(f"Singular system in unknowns {unknowns}")
    solution = A.lu_solve(b).to_list()
    return LinearSolution(
        {u: solution[i][0] for i, u in enumerate(unknowns)}, determinant
    )


def _solve_quadext(
    matrix: list[list[Coefficient]],
    rhs: list[Coefficient],
    unknowns: list[Unknown],
    a_loops: int,
) -> LinearSolution:
    # Gauss-Jordan over Q(x)(t0); sympy has no domain for this extension.
    one = QuadExtElement.rational(1, a_loops)
    rows = [[one * e for e in row] + [one * r] for row, r in zip(matrix, rhs)]
    n = len(rows)
    determinant = one
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col]), None)
        if pivot is None:
            raise SingularSystem(f"Singular system in unknowns {unknowns}")
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            determinant = -determinant
        determinant = determinant * rows[col][col]
        inverse = rows[col][col].inverse()
        rows[col] = [e * inverse for e in rows[col]]
        for r in range(n):
            if r != col and rows[r][col]:
                factor = rows[r][col]
                rows[r] = [e - factor * p for e, p in zip(rows[r], rows[col])]
    return LinearSolution({u: rows[i][n] for i, u in enumerate(unknowns)}, determinant)
