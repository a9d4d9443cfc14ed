import logging
from dataclasses import dataclass
from typing import Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from ..json import JSONObject
from .quadext import integer_rows
from .ratfunc import (
    Polynomial,
    Qx,
    RationalFunction,
    coefficients,
    polynomial,
    series_expand,
)

logger = logging.getLogger(__name__)

RESERVE = 4


def _nullspace(rows: list[list], width: int) -> list[list]:
    if not rows:
        return [[QQ.one if i == j else QQ.zero for i in range(width)] for j in range(width)]
    matrix = DomainMatrix(rows, (len(rows), width), QQ)
    return matrix.nullspace().to_list()


def _coefficient(series: Sequence, n: int):
    return series[n] if 0 <= n < len(series) else QQ.zero


def _pade(series: Sequence, p: int, q: int, length: int) -> RationalFunction | None:
    # Q·S − P ≡ 0 mod x^length with deg P ≤ p, deg Q ≤ q, unknowns q_0..q_q.
    rows = [
        [_coefficient(series, n - j) for j in range(q + 1)] for n in range(p + 1, length)
    ]
    for vector in _nullspace(rows, q + 1):
        if not vector[0]:
            continue
        denominator = [c / vector[0] for c in vector]
        numerator = [
            sum(
                (denominator[j] * _coefficient(series, n - j) for j in range(min(n, q) + 1)),
                QQ.zero,
            )
            for n in range(p + 1)
        ]
        return Qx.new(polynomial(numerator), polynomial(denominator))
    return None


def pade_reconstruct(series: Sequence, max_deg: int) -> RationalFunction | None:
    """Least-degree P/Q matching the series, confirmed on RESERVE extra coefficients."""
    series = [QQ.convert(c) for c in series]
    if len(series) < 2 * max_deg + 2:
        raise ValueError(
            f"Need at least {2 * max_deg + 2} coefficients for degree {max_deg}, got {len(series)}"
        )
    length = len(series) - RESERVE
    for total in range(2 * max_deg + 1):
        for q in range(max(0, total - max_deg), min(total, max_deg) + 1):
            p = total - q
            if p + q + 1 > length:
                continue
            candidate = _pade(series, p, q, length)
            if candidate is None:
                continue
            if series_expand(candidate, len(series) - 1) == series:
                logger.debug("Rational fit of degrees (%d, %d): %s", p, q, candidate)
                return candidate
    return None


def _power(series: list, k: int, length: int) -> list:
    result = [QQ.one] + [QQ.zero] * (length - 1)
    for _ in range(k):
        result = [
            sum((result[i] * series[n - i] for i in range(n + 1)), QQ.zero)
            for n in range(length)
        ]
    return result


def algebraic_fit_deg2(
    series: Sequence, max_deg: int
) -> tuple[Polynomial, Polynomial, Polynomial] | None:
    """Non-trivial (P0, P1, P2) with P0 + P1·G + P2·G² = 0, degrees ≤ max_deg."""
    series = [QQ.convert(c) for c in series]
    if len(series) < 3 * (max_deg + 1) + RESERVE:
        raise ValueError(
            f"Need at least {3 * (max_deg + 1) + RESERVE} coefficients for degree {max_deg}"
        )
    powers = [_power(series, k, len(series)) for k in range(3)]
    length = len(series) - RESERVE
    for degree in range(max_deg + 1):
        width = degree + 1

        def rows(upto: int) -> list[list]:
            return [
                [_coefficient(powers[k], n - i) for k in range(3) for i in range(width)]
                for n in range(upto)
            ]

        basis = _nullspace(rows(length), 3 * width)
        # a rational series also satisfies a relation without G², prefer that one
        basis.sort(key=lambda vector: any(vector[2 * width :]))
        for vector in basis:
            relation = tuple(
                polynomial(vector[k * width : (k + 1) * width]) for k in range(3)
            )
            if all(
                not sum(row_value * value for row_value, value in zip(row, vector))
                for row in rows(len(series))
            ):
                logger.debug("Algebraic relation of degree %d: %s", degree, relation)
                return relation
    return None


def relation_residual(relation: Sequence[Polynomial], series: Sequence) -> list:
    series = [QQ.convert(c) for c in series]
    length = len(series)
    powers = [_power(series, k, length) for k in range(3)]
    residual = [QQ.zero] * length
    for k, p in enumerate(relation):
        for i, c in enumerate(coefficients(p)):
            for n in range(i, length):
                residual[n] += c * powers[k][n - i]
    return residual


@dataclass(frozen=True)
class AlgebraicRelation:
    """G known only through its first terms and a fitted P0 + P1·G + P2·G² = 0."""

    relation: tuple[Polynomial, Polynomial, Polynomial]
    series: tuple

    def series_expand(self, N: int) -> list:
        if N >= len(self.series):
            raise ValueError(f"Only {len(self.series)} coefficients are known, asked for {N + 1}")
        return list(self.series[: N + 1])

    def integer_relation(self) -> list[list[int]]:
        return integer_rows(self.relation)

    def __str__(self) -> str:
        p0, p1, p2 = (p.as_expr() for p in self.relation)
        return f"({p0}) + ({p1})*G + ({p2})*G**2 = 0"

    def to_json(self) -> JSONObject:
        return {"type": "algebraic", "minpoly": self.integer_relation()}
