"""Exact scalars: rationals (gmpy2.mpq) and Gaussian rationals."""

from fractions import Fraction
from numbers import Integral

import gmpy2

mpq = gmpy2.mpq
_MPQ = type(mpq(0))


def Q(x, den=None):
    """Coerce ``x`` (int, str "p/q", Fraction, mpq) to an exact rational."""
    if den is not None:
        return mpq(x, den)
    if isinstance(x, _MPQ):
        return x
    if isinstance(x, (Integral, Fraction)):
        return mpq(x)
    if isinstance(x, str):
        return mpq(x.strip())
    if isinstance(x, GaussianRational):
        if x.im:
            raise ValueError(f"{x} is not real")
        return x.re
    if type(x).__name__ in ("mpz",):
        return mpq(x)
    raise TypeError(f"cannot convert {type(x).__name__} to a rational")


def is_rational(x):
    return isinstance(x, (_MPQ, Integral, Fraction))


class GaussianRational:
    """An element ``re + im*i`` of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Q(re)
        self.im = Q(im)

    @staticmethod
    def coerce(x):
        if isinstance(x, GaussianRational):
            return x
        return GaussianRational(Q(x), 0)

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def norm(self):
        """|z|^2, a rational."""
        return self.re * self.re + self.im * self.im

    def real(self):
        return self.re

    def imag(self):
        return self.im

    def __add__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational(self.re + other.re, self.im + other.im)
        if is_rational(other):
            return GaussianRational(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational(self.re - other.re, self.im - other.im)
        if is_rational(other):
            return GaussianRational(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        if is_rational(other):
            return GaussianRational(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational(self.re * other.re - self.im * other.im,
                                    self.re * other.im + self.im * other.re)
        if is_rational(other):
            return GaussianRational(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self):
        n = self.norm()
        if not n:
            raise ZeroDivisionError("GaussianRational division by zero")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if isinstance(other, GaussianRational):
            return self * other.inverse()
        if is_rational(other):
            if not other:
                raise ZeroDivisionError("GaussianRational division by zero")
            return GaussianRational(self.re / other, self.im / other)
        return NotImplemented

    def __rtruediv__(self, other):
        if is_rational(other):
            return GaussianRational.coerce(other) * self.inverse()
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, Integral):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = GaussianRational(1, 0)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if is_rational(other):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({format_rational(self.re)!r}, {format_rational(self.im)!r})"

    def __str__(self):
        if not self.im:
            return format_rational(self.re)
        if not self.re:
            return f"{format_rational(self.im)}*i"
        sign = "+" if self.im > 0 else "-"
        return f"{format_rational(self.re)}{sign}{format_rational(abs(self.im))}*i"


I = GaussianRational(0, 1)


def conj(x):
    return x.conjugate() if isinstance(x, GaussianRational) else x


def re_part(x):
    return x.re if isinstance(x, GaussianRational) else Q(x)


def abs2(x):
    return x.norm() if isinstance(x, GaussianRational) else Q(x) * Q(x)


def format_rational(x):
    x = Q(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def simplify(x):
    """Demote a Gaussian rational with zero imaginary part to a rational."""
    if isinstance(x, GaussianRational) and not x.im:
        return x.re
    return x
