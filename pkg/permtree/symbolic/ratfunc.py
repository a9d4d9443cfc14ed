from typing import TypeAlias
from dataclasses import dataclass
from math import lcm
from typing import Iterable

from sympy import QQ, factor
from sympy.polys.fields import FracElement, field
from sympy.polys.ring_series import rs_mul, rs_series_inversion
from sympy.polys.rings import PolyElement

from ..errors import NonUnitDenominator
from ..json import JSONObject

Qx, x = field("x", QQ)
Rx = Qx.ring
X = Rx.gens[0]

RationalFunction: TypeAlias = FracElement
Polynomial: TypeAlias = PolyElement


def polynomial(coefficients: Iterable) -> Polynomial:
    return Rx.from_dict(
        {(i,): QQ(c) for i, c in enumerate(coefficients) if c},
    )


def coefficients(p: Polynomial, length: int | None = None) -> list:
    terms = {i: c for (i,), c in p.terms()}
    if length is None:
        length = max(terms, default=-1) + 1
    return [terms.get(i, QQ.zero) for i in range(length)]


def rational(numerator: Iterable, denominator: Iterable = (1,)) -> RationalFunction:
    return Qx.new(polynomial(numerator), polynomial(denominator))


def valuation(p: Polynomial) -> int:
    return min((i for (i,), _ in p.terms()), default=0)


def value_at_zero(f: RationalFunction):
    den = f.denom.get(Rx.zero_monom, QQ.zero)
    if not den:
        raise NonUnitDenominator(f"{f.as_expr()} has a pole at x = 0")
    return f.numer.get(Rx.zero_monom, QQ.zero) / den


def series_expand(f: RationalFunction, N: int) -> list:
    if not f.denom.get(Rx.zero_monom, QQ.zero):
        raise NonUnitDenominator(f"{f.as_expr()} has no power series at x = 0")
    inverse = rs_series_inversion(f.denom, X, N + 1)
    return coefficients(rs_mul(f.numer, inverse, X, N + 1), N + 1)


def laurent_expand(f: RationalFunction, N: int) -> tuple[int, list]:
    """Expansion of f around x = 0 as (lowest exponent, coefficients up to x^N)."""
    shift = valuation(f.denom)
    denom = Rx.from_dict({(i - shift,): c for (i,), c in f.denom.terms()})
    length = N + shift + 1
    if length <= 0:
        return -shift, []
    inverse = rs_series_inversion(denom, X, length)
    return -shift, coefficients(rs_mul(f.numer, inverse, X, length), length)


def to_int(value) -> int:
    value = QQ.convert(value)
    if QQ.denom(value) != 1:
        raise ValueError(f"{value} is not an integer")
    return int(QQ.numer(value))


def normalize(f: RationalFunction) -> tuple[list[int], list[int]]:
    """Integer coefficient lists (ascending) with den[0] = 1 whenever possible."""
    num = coefficients(f.numer) or [QQ.zero]
    den = coefficients(f.denom)
    scale = den[0] if den[0] else den[-1]
    num = [c / scale for c in num]
    den = [c / scale for c in den]
    common = lcm(*(int(QQ.denom(c)) for c in num + den))
    return [to_int(c * common) for c in num], [to_int(c * common) for c in den]


def to_text(f: RationalFunction) -> str:
    return str(factor(f.as_expr()))


def to_json(f: RationalFunction) -> JSONObject:
    num, den = normalize(f)
    return {"type": "rational", "num": num, "den": den}


def from_json(data: JSONObject) -> RationalFunction:
    if data.get("type") not in (None, "rational"):
        raise ValueError(f"Unsupported generating function type {data.get('type')}")
    return rational(data["num"], data["den"])


@dataclass(frozen=True)
class PowerSeries:
    coefficients: tuple

    @classmethod
    def of(cls, values: Iterable) -> "PowerSeries":
        return cls(tuple(QQ.convert(value) for value in values))

    @classmethod
    def expand(cls, f: RationalFunction, N: int) -> "PowerSeries":
        return cls(tuple(series_expand(f, N)))

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __len__(self) -> int:
        return len(self.coefficients)

    def __getitem__(self, n: int):
        return self.coefficients[n]

    def _poly(self) -> Polynomial:
        return polynomial(self.coefficients)

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        size = min(len(self), len(other))
        return PowerSeries(
            tuple(a + b for a, b in zip(self.coefficients[:size], other.coefficients))
        )

    def __neg__(self) -> "PowerSeries":
        return PowerSeries(tuple(-a for a in self.coefficients))

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        return self + (-other)

    def __mul__(self, other: "PowerSeries") -> "PowerSeries":
        size = min(len(self), len(other))
        product = rs_mul(self._poly(), other._poly(), X, size)
        return PowerSeries(tuple(coefficients(product, size)))

    def as_ints(self) -> list[int]:
        return [to_int(c) for c in self.coefficients]
