from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dyckhike.polynomial import (
    Poly,
    add,
    definite_sum,
    evaluate,
    interpolate,
    interpolate_consecutive,
    mul,
    shift,
)

X = Poly.x()
small_frac = st.fractions(min_value=-20, max_value=20, max_denominator=12)
polys = st.lists(small_frac, max_size=6).map(Poly.from_coeffs)


def P(*coeffs):
    return Poly.from_coeffs(coeffs)


def test_add_examples():
    assert add(P(1, 0, 1), P(0, 0, -1)) == Poly.constant(1)
    p = P(3, -1, 2)
    assert add(Poly.constant(0), p) == p
    assert add(P(0, 3), P(2, 1)) == P(2, 4)


def test_mul_examples():
    assert mul(X, X) == P(0, 0, 1)
    assert mul(P(1, 2), Poly.constant(0)).is_zero()
    assert mul(X + 1, X - 1) == P(-1, 0, 1)


def test_zero_polynomial_degree():
    assert Poly.constant(0).degree == -1
    assert P(0, 0, 0).degree == -1


def test_normalized_storage():
    p = P(Fraction(1, 2), Fraction(1, 3))
    assert p.den == 6 and p.num == (3, 2)
    assert P(Fraction(2, 4)) == Poly.constant(Fraction(1, 2))


def test_evaluate_ladder_cubic():
    lp = P(0, 6, -27, 27)  # 3p(3p-1)(3p-2)
    assert evaluate(lp, 1) == 6
    assert evaluate(lp, 2) == 120
    assert evaluate(lp, 0) == 0
    assert evaluate(P(7, 1, 1), 0) == 7


def test_shift_examples():
    assert shift(P(0, 0, 1), -1) == P(1, -2, 1)
    p = P(4, 0, -3, 2)
    assert shift(p, 0) == p
    assert shift(X, 5) == P(5, 1)


def test_definite_sum_examples():
    lp = P(0, 6, -27, 27)
    s = definite_sum(lp, 1)
    for M in range(-1, 12):
        assert evaluate(s, M) == Fraction(3, 4) * M * (M + 1) * (3 * M - 2) * (3 * M + 1)
    assert definite_sum(Poly.constant(1), 1) == X
    assert definite_sum(X, 1) == P(0, Fraction(1, 2), Fraction(1, 2))


def test_definite_sum_rejects_negative_lower_bound():
    with pytest.raises(ValueError):
        definite_sum(X, -1)


def test_definite_sum_degree():
    p = P(1, 2, 3, 4)
    assert definite_sum(p, 0).degree == 4
    assert definite_sum(Poly.constant(0), 3).is_zero()


@given(polys, st.integers(0, 10), st.lists(st.integers(0, 50), min_size=1, max_size=20))
def test_definite_sum_matches_loop(p, a, offsets):
    s = definite_sum(p, a)
    for off in offsets:
        M = a + off
        assert evaluate(s, M) == sum((evaluate(p, m) for m in range(a, M + 1)), Fraction(0))


@given(polys, st.integers(0, 10))
def test_definite_sum_vanishes_below_range(p, a):
    assert evaluate(definite_sum(p, a), a - 1) == 0


@given(polys, st.integers(-30, 30))
def test_shift_round_trip(p, c):
    assert shift(shift(p, c), -c) == p


@given(polys, st.integers(-10, 10), st.integers(-6, 6))
def test_shift_is_translation(p, c, x):
    assert evaluate(shift(p, c), x) == evaluate(p, x + c)


@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p + q == q + p
    assert p * q == q * p


@given(polys, small_frac)
def test_evaluate_matches_naive(p, x):
    assert evaluate(p, x) == sum((c * x**i for i, c in enumerate(p.coeffs)), Fraction(0))


@given(polys, st.integers(-10, 10))
def test_interpolation_recovers_polynomial(p, x0):
    n = max(p.degree, 0) + 1
    values = [evaluate(p, x0 + i) for i in range(n)]
    assert interpolate_consecutive(x0, values) == p
    xs = [Fraction(2 * i + 1, 3) for i in range(n)]
    assert interpolate(xs, [evaluate(p, x) for x in xs]) == p


def test_interpolate_rejects_duplicate_nodes():
    with pytest.raises(ValueError):
        interpolate([1, 1], [2, 3])
