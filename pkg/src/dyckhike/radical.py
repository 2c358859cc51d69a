"""Exact scalars of the form ``q * sqrt(N)``."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

import mpmath
from sympy import factorint

from .errors import IncompatibleRadicals

Rational = Union[int, Fraction]


@lru_cache(maxsize=65536)
def squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(s, r)`` with ``n == s*s*r`` and ``r`` square-free."""
    if n < 0:
        raise ValueError("radicand must be non-negative")
    if n < 2:
        return (1, n) if n else (0, 1)
    root = math.isqrt(n)
    if root * root == n:
        return root, 1
    s, r = 1, 1
    for prime, exp in factorint(n).items():
        s *= prime ** (exp // 2)
        if exp % 2:
            r *= prime
    return s, r


@dataclass(frozen=True)
class RatRadical:
    """``rational * sqrt(radicand)`` with a square-free radicand.

    Zero is stored as ``(0, 1)``. Construct through :meth:`make` or
    :meth:`sqrt` unless the radicand is already known to be square-free.
    """

    rational: Fraction = Fraction(0)
    radicand: int = 1

    @classmethod
    def make(cls, rational: Rational, radicand: int = 1) -> "RatRadical":
        q = Fraction(rational)
        if q == 0 or radicand == 0:
            return cls(Fraction(0), 1)
        s, r = squarefree_split(radicand)
        return cls(q * s, r)

    @classmethod
    def sqrt(cls, value: Rational) -> "RatRadical":
        v = Fraction(value)
        if v < 0:
            raise ValueError("square root of a negative number")
        # sqrt(a/b) = sqrt(a*b)/b
        return cls.make(Fraction(1, v.denominator), v.numerator * v.denominator)

    @classmethod
    def sqrt_product(cls, factors: Iterable[Rational]) -> "RatRadical":
        out = ONE
        for f in factors:
            out = out * cls.sqrt(f)
        return out

    def is_zero(self) -> bool:
        return self.rational == 0

    def square(self) -> Fraction:
        return self.rational * self.rational * self.radicand

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RatRadical.make(self.rational * other, self.radicand) if other else ZERO
        if not isinstance(other, RatRadical):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return ZERO
        g = math.gcd(self.radicand, other.radicand)
        return RatRadical(
            self.rational * other.rational * g,
            (self.radicand // g) * (other.radicand // g),
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return RatRadical(self.rational / other, self.radicand)
        if not isinstance(other, RatRadical):
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by a zero radical")
        # q1 sqrt(N1) / (q2 sqrt(N2)) = q1/(q2 N2) * sqrt(N1 N2)
        return (self * RatRadical(Fraction(1), other.radicand)) / (other.rational * other.radicand)

    def __neg__(self):
        return RatRadical(-self.rational, self.radicand)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatRadical.make(other)
        if not isinstance(other, RatRadical):
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.radicand != other.radicand:
            raise IncompatibleRadicals(
                f"cannot add {self} and {other}: radicands {self.radicand} and {other.radicand} differ"
            )
        q = self.rational + other.rational
        return RatRadical(q, self.radicand) if q else ZERO

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def to_mpf(self, prec: int = 53) -> mpmath.mpf:
        with mpmath.workprec(prec):
            q = mpmath.mpf(self.rational.numerator) / self.rational.denominator
            return +(q * mpmath.sqrt(self.radicand))

    def __float__(self):
        return float(self.to_mpf())

    def as_rational(self) -> Fraction:
        if self.radicand != 1:
            raise ValueError(f"{self} is irrational")
        return self.rational

    def expr(self) -> str:
        """Compact text, folding integer prefactors under the root: ``sqrt(720)``."""
        q, n = self.rational, self.radicand
        if n == 1:
            return str(q)
        sign = "-" if q < 0 else ""
        q = abs(q)
        if q.denominator == 1:
            return f"{sign}sqrt({q.numerator ** 2 * n})"
        return f"{sign}{q}*sqrt({n})"

    def __str__(self):
        return self.expr()


ZERO = RatRadical(Fraction(0), 1)
ONE = RatRadical(Fraction(1), 1)
