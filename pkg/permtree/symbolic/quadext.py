from dataclasses import dataclass
from functools import lru_cache
from math import gcd, lcm

from sympy import QQ
from sympy.polys.ring_series import rs_mul, rs_series_inversion, rs_trunc

from ..errors import NonUnitDenominator
from ..json import JSONObject
from .ratfunc import (
    PowerSeries,
    Qx,
    RationalFunction,
    Rx,
    X,
    coefficients,
    laurent_expand,
    normalize,
    x,
)


def kernel_factor(a_loops: int) -> RationalFunction:
    return 1 + x - a_loops * x


@dataclass(frozen=True)
class QuadExtElement:
    """a + b·t0 where x·c·t0² − c·t0 + 1 = 0 and c = 1 + x − a_loops·x."""

    a: RationalFunction
    b: RationalFunction
    a_loops: int

    @classmethod
    def generator(cls, a_loops: int) -> "QuadExtElement":
        return cls(Qx.zero, Qx.one, a_loops)

    @classmethod
    def rational(cls, value, a_loops: int) -> "QuadExtElement":
        return cls(Qx(value), Qx.zero, a_loops)

    @property
    def p(self) -> RationalFunction:
        return 1 / x

    @property
    def q(self) -> RationalFunction:
        return -1 / (x * kernel_factor(self.a_loops))

    def _coerce(self, other) -> "QuadExtElement":
        if isinstance(other, QuadExtElement):
            if other.a_loops != self.a_loops:
                raise ValueError(
                    f"Cannot combine extensions for a={self.a_loops} and a={other.a_loops}"
                )
            return other
        return QuadExtElement(Qx(other), Qx.zero, self.a_loops)

    def __add__(self, other) -> "QuadExtElement":
        other = self._coerce(other)
        return QuadExtElement(self.a + other.a, self.b + other.b, self.a_loops)

    __radd__ = __add__

    def __neg__(self) -> "QuadExtElement":
        return QuadExtElement(-self.a, -self.b, self.a_loops)

    def __sub__(self, other) -> "QuadExtElement":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "QuadExtElement":
        return self._coerce(other) - self

    def __mul__(self, other) -> "QuadExtElement":
        other = self._coerce(other)
        # t0² = p·t0 + q
        bb = self.b * other.b
        return QuadExtElement(
            self.a * other.a + self.q * bb,
            self.a * other.b + other.a * self.b + self.p * bb,
            self.a_loops,
        )

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "QuadExtElement":
        if n < 0:
            return self.inverse() ** (-n)
        result = self._coerce(1)
        for _ in range(n):
            result = result * self
        return result

    def norm(self) -> RationalFunction:
        return self.a**2 + self.a * self.b * self.p - self.b**2 * self.q

    def conjugate(self) -> "QuadExtElement":
        return QuadExtElement(self.a + self.b * self.p, -self.b, self.a_loops)

    def inverse(self) -> "QuadExtElement":
        norm = self.norm()
        if not norm:
            raise ZeroDivisionError("Element of the quadratic extension has norm zero")
        conjugate = self.conjugate()
        return QuadExtElement(conjugate.a / norm, conjugate.b / norm, self.a_loops)

    def __truediv__(self, other) -> "QuadExtElement":
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other) -> "QuadExtElement":
        return self._coerce(other) * self.inverse()

    def __bool__(self) -> bool:
        # t0 is irrational over Q(x) for every a, so a + b·t0 = 0 iff a = b = 0.
        return bool(self.a) or bool(self.b)

    def is_rational(self) -> bool:
        return not self.b

    def series_expand(self, N: int) -> list:
        shift_a, series_a = laurent_expand(self.a, N)
        shift_b, series_b = laurent_expand(self.b, N)
        root = kernel_series(self.a_loops, N - min(shift_b, 0))
        total: dict[int, object] = {}
        for i, c in enumerate(series_a):
            total[shift_a + i] = total.get(shift_a + i, QQ.zero) + c
        for i, c in enumerate(series_b):
            if not c:
                continue
            for j, r in enumerate(root):
                n = shift_b + i + j
                if n > N:
                    break
                total[n] = total.get(n, QQ.zero) + c * r
        poles = [n for n, c in total.items() if n < 0 and c]
        if poles:
            raise NonUnitDenominator(f"{self} has a pole of order {-min(poles)} at x = 0")
        return [total.get(n, QQ.zero) for n in range(N + 1)]

    def minimal_polynomial(self) -> tuple[RationalFunction, ...]:
        """(P0, P1, P2) with P0 + P1·G + P2·G² = 0 for G = self."""
        if self.is_rational():
            return (-self.a, Qx.one, Qx.zero)
        trace = 2 * self.a + self.b * self.p
        return (self.norm(), -trace, Qx.one)

    def integer_relation(self) -> list[list[int]]:
        relation = self.minimal_polynomial()
        common = Rx.one
        for coefficient in relation:
            common = common.lcm(coefficient.denom)
        return integer_rows(
            [coefficient.numer * common.exquo(coefficient.denom) for coefficient in relation]
        )

    def __str__(self) -> str:
        return f"({self.a.as_expr()}) + ({self.b.as_expr()})*t0"

    def to_json(self) -> JSONObject:
        a_num, a_den = normalize(self.a)
        b_num, b_den = normalize(self.b)
        return {
            "type": "quadext",
            "a": {"num": a_num, "den": a_den},
            "b": {"num": b_num, "den": b_den},
            "a_loops": self.a_loops,
            "minpoly": self.integer_relation(),
        }


def integer_rows(polynomials) -> list[list[int]]:
    rows = [coefficients(p) for p in polynomials]
    scale = lcm(*(int(QQ.denom(c)) for row in rows for c in row)) if any(rows) else 1
    ints = [[int(QQ.numer(c * scale)) for c in row] for row in rows]
    content = gcd(*(c for row in ints for c in row))
    if content:
        ints = [[c // content for c in row] for row in ints]
    leading = next((row[-1] for row in reversed(ints) if row), 1)
    if leading < 0:
        ints = [[-c for c in row] for row in ints]
    return [row or [0] for row in ints]


@lru_cache(maxsize=None)
def kernel_series(a_loops: int, N: int) -> tuple:
    """Coefficients of t0 up to x^N by Newton iteration from t0(0) = 1."""
    c = 1 + X - a_loops * X
    xc = X * c
    t = X.ring.one
    precision = 1
    while precision < N + 1:
        precision = min(2 * precision, N + 1)
        xct = rs_mul(xc, t, X, precision)
        residual = rs_mul(xct, t, X, precision) - rs_mul(c, t, X, precision) + 1
        slope = 2 * xct - c
        step = rs_mul(residual, rs_series_inversion(slope, X, precision), X, precision)
        t = rs_trunc(t - step, X, precision)
    return tuple(coefficients(t, N + 1))


def kernel_t0(a_loops: int, N: int) -> tuple[QuadExtElement, PowerSeries]:
    return QuadExtElement.generator(a_loops), PowerSeries(kernel_series(a_loops, N))
