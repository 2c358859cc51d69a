"""Dense univariate polynomials with exact rational coefficients.

A :class:`Poly` stores integer numerators over one shared positive
denominator. Nested summation produces polynomials of degree several hundred
whose coefficients have thousands of digits, and keeping a single denominator
turns nearly all of the work into big-int times small-int products.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from gmpy2 import mpz

Rational = Union[int, Fraction]


@dataclass(frozen=True, eq=True)
class Poly:
    """``sum(num[i] * x**i) / den`` in lowest terms with trailing zeros stripped."""

    num: tuple[int, ...] = ()
    den: int = 1

    def __post_init__(self):
        num = list(self.num)
        den = self.den
        if den == 0:
            raise ZeroDivisionError("polynomial denominator is zero")
        while num and num[-1] == 0:
            num.pop()
        if not num:
            den = 1
        else:
            if den < 0:
                num = [-c for c in num]
                den = -den
            g = math.gcd(den, *num)
            if g > 1:
                num = [c // g for c in num]
                den //= g
        object.__setattr__(self, "num", tuple(num))
        object.__setattr__(self, "den", den)

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[Rational]) -> "Poly":
        fr = [Fraction(c) for c in coeffs]
        if not fr:
            return cls()
        den = math.lcm(*(c.denominator for c in fr))
        return cls(tuple(c.numerator * (den // c.denominator) for c in fr), den)

    @classmethod
    def constant(cls, c: Rational) -> "Poly":
        return cls.from_coeffs([c])

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    @property
    def degree(self) -> int:
        return len(self.num) - 1

    def is_zero(self) -> bool:
        return not self.num

    def __call__(self, x: Rational) -> Fraction:
        return evaluate(self, x)

    def __add__(self, other):
        return add(self, _coerce(other))

    __radd__ = __add__

    def __neg__(self):
        return Poly(tuple(-c for c in self.num), self.den)

    def __sub__(self, other):
        return add(self, -_coerce(other))

    def __rsub__(self, other):
        return add(_coerce(other), -self)

    def __mul__(self, other):
        return mul(self, _coerce(other))

    __rmul__ = __mul__

    def __repr__(self):
        if not self.num:
            return "Poly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*x^{i}")
        return "Poly(" + " + ".join(terms) + ")"


def _coerce(value) -> Poly:
    if isinstance(value, Poly):
        return value
    if isinstance(value, (int, Fraction)):
        return Poly.constant(value)
    return NotImplemented


def add(p: Poly, q: Poly) -> Poly:
    den = math.lcm(p.den, q.den)
    sp, sq = den // p.den, den // q.den
    n = max(len(p.num), len(q.num))
    out = [0] * n
    for i, c in enumerate(p.num):
        out[i] += c * sp
    for i, c in enumerate(q.num):
        out[i] += c * sq
    return Poly(tuple(out), den)


def mul(p: Poly, q: Poly) -> Poly:
    if not p.num or not q.num:
        return Poly()
    # iterate over the shorter factor; engine products are (low degree) x (high degree)
    a, b = (p.num, q.num) if len(p.num) <= len(q.num) else (q.num, p.num)
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return Poly(tuple(out), p.den * q.den)


def _eval_int_numerator(num: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(num):
        acc = acc * x + c
    return acc


def evaluate(p: Poly, x: Rational) -> Fraction:
    """Exact Horner evaluation."""
    if isinstance(x, int):
        return Fraction(_eval_int_numerator(p.num, x), p.den)
    x = Fraction(x)
    a, b = x.numerator, x.denominator
    # homogeneous Horner: sum num[i] a^i b^(D-i) over den * b^D
    acc = 0
    bpow = 1
    for c in reversed(p.num):
        acc = acc * a + c * bpow
        bpow *= b
    deg = max(len(p.num) - 1, 0)
    return Fraction(acc, p.den * b**deg)


def shift(p: Poly, c: int) -> Poly:
    """Return ``q`` with ``q(x) = p(x + c)`` (Taylor shift)."""
    a = list(p.num)
    n = len(a) - 1
    if c == 0 or n < 1:
        return p
    for i in range(n):
        for j in range(n - 1, i - 1, -1):
            a[j] += c * a[j + 1]
    return Poly(tuple(a), p.den)


def _newton_to_monomial(x0: int, diffs: Sequence[int]) -> tuple[tuple[int, ...], int]:
    """Expand ``sum diffs[i] * C(x - x0, i)`` into monomial numerators over n!."""
    n = len(diffs) - 1
    scale = math.factorial(n)
    # a_i = diffs[i] * n!/i!, nested as a_0 + (x-x0)(a_1 + (x-x0-1)(a_2 + ...))
    weights = [0] * (n + 1)
    w = 1
    for i in range(n, -1, -1):
        weights[i] = w
        w *= i if i else 1
    acc = [diffs[n] * weights[n]]
    for i in range(n - 1, -1, -1):
        c = x0 + i
        nxt = [0] * (len(acc) + 1)
        for t, coef in enumerate(acc):
            nxt[t + 1] += coef
            nxt[t] -= c * coef
        nxt[0] += diffs[i] * weights[i]
        acc = nxt
    return tuple(acc), scale


def interpolate_consecutive(x0: int, values: Sequence[Rational]) -> Poly:
    """The unique polynomial of degree < len(values) through (x0 + t, values[t])."""
    if not values:
        return Poly()
    fr = [Fraction(v) for v in values]
    den = math.lcm(*(v.denominator for v in fr))
    diffs = []
    row = [v.numerator * (den // v.denominator) for v in fr]
    while row:
        diffs.append(row[0])
        row = [row[i + 1] - row[i] for i in range(len(row) - 1)]
    num, scale = _newton_to_monomial(x0, diffs)
    return Poly(num, den * scale)


def definite_sum(p: Poly, lower: int) -> Poly:
    """Return ``F`` with ``F(M) = sum_{m=lower}^{M} p(m)`` for every integer ``M >= lower - 1``.

    ``F`` is the interpolant of the running sums at the deg(p) + 2 consecutive
    points ``lower - 1, ..., lower + deg(p)``.
    """
    if lower < 0:
        raise ValueError("lower bound must be non-negative")
    if not p.num:
        return Poly()
    n = len(p.num)  # deg F = n
    num = [mpz(c) for c in p.num]
    running = [mpz(0)]
    acc = mpz(0)
    for t in range(n):
        acc += _eval_int_numerator(num, lower + t)
        running.append(acc)
    diffs = []
    row = running
    while row:
        diffs.append(row[0])
        row = [row[i + 1] - row[i] for i in range(len(row) - 1)]
    num, scale = _newton_to_monomial(lower - 1, diffs)
    return Poly(tuple(int(c) for c in num), p.den * scale)


def interpolate(xs: Sequence[Rational], ys: Sequence[Rational]) -> Poly:
    """Lagrange interpolation through arbitrary distinct nodes."""
    if len(xs) != len(ys):
        raise ValueError("xs and ys differ in length")
    xs = [Fraction(x) for x in xs]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be distinct")
    total = Poly()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if not yi:
            continue
        basis = Poly.constant(1)
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = basis * Poly.from_coeffs([-xj, 1])
                denom *= xi - xj
        total = total + basis * Fraction(Fraction(yi), denom)
    return total
