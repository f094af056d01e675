"""Exact-arithmetic helpers: rational square roots, parsing, determinants.

Routines here keep Fraction inputs exact wherever the result is rational and
fall back to float otherwise, so closed-form checkpoints can be verified with
zero tolerance.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

Number = float | Fraction | int


def is_exact(x) -> bool:
    return isinstance(x, (Fraction, int))


def sqrt_exact(x: Number):
    """Square root, exact for perfect-square rationals.

    Returns a Fraction when ``x`` is a Fraction/int with perfect-square
    numerator and denominator, else a float.  Negative input raises.
    """
    if x < 0:
        raise ValueError(f"sqrt of negative value {x}")
    if isinstance(x, (Fraction, int)):
        f = Fraction(x)
        rn = math.isqrt(f.numerator)
        rd = math.isqrt(f.denominator)
        if rn * rn == f.numerator and rd * rd == f.denominator:
            return Fraction(rn, rd)
        return math.sqrt(float(f))
    return math.sqrt(x)


def parse_number(text: str) -> Number:
    """Parse 'p/q' into an exact Fraction, anything else into a float.

    Exact inputs are routed through the toolkit's rational code paths.
    """
    s = text.strip()
    if "/" in s:
        return Fraction(s)
    try:
        return int(s)
    except ValueError:
        return float(s)


def det_fraction_free(matrix: Sequence[Sequence]) -> Fraction:
    """Determinant by Bareiss fraction-free elimination over exact entries.

    Intermediate divisions are exact, so no rounding occurs even for
    determinants that nearly cancel.
    """
    n = len(matrix)
    m = [[Fraction(x) for x in row] for row in matrix]
    if any(len(row) != n for row in m):
        raise ValueError("matrix must be square")
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev
            m[i][k] = Fraction(0)
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


class Sqrt2:
    """Element a + b*sqrt(2) of the real quadratic field Q(sqrt(2)).

    Enough field arithmetic for exact fifth-order normal-form work at the
    generalized Hopf point, where the linearization frequency is 3*sqrt(2)/128.
    """

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    @staticmethod
    def coerce(x) -> "Sqrt2":
        if isinstance(x, Sqrt2):
            return x
        return Sqrt2(Fraction(x), 0)

    def __add__(self, o):
        o = Sqrt2.coerce(o)
        return Sqrt2(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return Sqrt2(-self.a, -self.b)

    def __sub__(self, o):
        return self + (-Sqrt2.coerce(o))

    def __rsub__(self, o):
        return Sqrt2.coerce(o) + (-self)

    def __mul__(self, o):
        o = Sqrt2.coerce(o)
        return Sqrt2(self.a * o.a + 2 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def inverse(self) -> "Sqrt2":
        n = self.a * self.a - 2 * self.b * self.b
        if n == 0:
            raise ZeroDivisionError("zero element of Q(sqrt 2)")
        return Sqrt2(self.a / n, -self.b / n)

    def __truediv__(self, o):
        return self * Sqrt2.coerce(o).inverse()

    def __rtruediv__(self, o):
        return Sqrt2.coerce(o) * self.inverse()

    def __eq__(self, o):
        o = Sqrt2.coerce(o)
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def sign(self) -> int:
        if self.is_zero():
            return 0
        return 1 if float(self) > 0 else -1

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(2.0)

    def __repr__(self):
        return f"Sqrt2({self.a}, {self.b})"


class FieldComplex:
    """Complex number over an exact real field (re + im*i).

    Mirrors the small part of the ``complex`` interface the normal-form
    engine needs, so the engine runs identically over floats and over
    Q(sqrt(2)).
    """

    __slots__ = ("re", "im")

    def __init__(self, re, im=None):
        self.re = Sqrt2.coerce(re)
        self.im = Sqrt2.coerce(im if im is not None else 0)

    @staticmethod
    def coerce(x) -> "FieldComplex":
        if isinstance(x, FieldComplex):
            return x
        return FieldComplex(x)

    def __add__(self, o):
        o = FieldComplex.coerce(o)
        return FieldComplex(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return FieldComplex(-self.re, -self.im)

    def __sub__(self, o):
        return self + (-FieldComplex.coerce(o))

    def __rsub__(self, o):
        return FieldComplex.coerce(o) + (-self)

    def __mul__(self, o):
        o = FieldComplex.coerce(o)
        return FieldComplex(self.re * o.re - self.im * o.im,
                            self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self) -> "FieldComplex":
        return FieldComplex(self.re, -self.im)

    def __truediv__(self, o):
        o = FieldComplex.coerce(o)
        n = o.re * o.re + o.im * o.im
        inv = n.inverse()
        num = self * o.conjugate()
        return FieldComplex(num.re * inv, num.im * inv)

    def __eq__(self, o):
        o = FieldComplex.coerce(o)
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def is_zero(self) -> bool:
        return self.re.is_zero() and self.im.is_zero()

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"FieldComplex({self.re!r}, {self.im!r})"
