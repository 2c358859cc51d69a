"""Padé approximants [L/M] from exact Taylor coefficients.

The denominator comes from the M x M Toeplitz system solved by fraction-free
(Bareiss) elimination on integers, so nothing is rounded before evaluation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import gmpy2
import mpmath

from .errors import NearPole, SingularSystem, ValidationError
from .polynomial import Poly, evaluate


@dataclass(frozen=True)
class PadeApproximant:
    L: int
    M: int
    numerator: Poly
    denominator: Poly
    # "r" or "r^2": the series variable; evaluation substitutes r*r for the latter
    variable: str = "r"

    def __post_init__(self):
        if self.numerator.degree > self.L or self.denominator.degree > self.M:
            raise ValueError("numerator/denominator degree exceeds [L/M]")
        if evaluate(self.denominator, 0) != 1:
            raise ValueError("denominator must be normalized to 1 at the origin")


def _integer_scaled(taylor: Sequence[Fraction]) -> list[gmpy2.mpz]:
    den = math.lcm(*(Fraction(t).denominator for t in taylor))
    return [gmpy2.mpz(Fraction(t).numerator * (den // Fraction(t).denominator)) for t in taylor]


def _rank(matrix: list[list[gmpy2.mpz]]) -> int:
    """Exact rank by fraction-free elimination with column skipping."""
    a = [row[:] for row in matrix]
    rows, cols = len(a), len(a[0]) if a else 0
    prev = gmpy2.mpz(1)
    r = 0
    for col in range(cols):
        pivot = next((i for i in range(r, rows) if a[i][col] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        for i in range(r + 1, rows):
            for j in range(col + 1, cols):
                a[i][j] = gmpy2.divexact(a[r][col] * a[i][j] - a[i][col] * a[r][j], prev)
            a[i][col] = gmpy2.mpz(0)
        prev = a[r][col]
        r += 1
    return r


def _bareiss_solve(matrix: list[list[gmpy2.mpz]], rhs: list[gmpy2.mpz]) -> list[gmpy2.mpq]:
    """Solve an integer square system exactly; raise SingularSystem with the rank."""
    n = len(matrix)
    a = [row[:] + [b] for row, b in zip(matrix, rhs)]
    prev = gmpy2.mpz(1)
    for k in range(n):
        pivot = next((i for i in range(k, n) if a[i][k] != 0), None)
        if pivot is None:
            rank = _rank([row[:n] for row in matrix])
            raise SingularSystem(
                f"Padé system is singular (rank {rank} < {n})", rank=rank, size=n
            )
        if pivot != k:
            a[k], a[pivot] = a[pivot], a[k]
        akk = a[k][k]
        row_k = a[k]
        for i in range(k + 1, n):
            row_i = a[i]
            aik = row_i[k]
            for j in range(k + 1, n + 1):
                row_i[j] = gmpy2.divexact(akk * row_i[j] - aik * row_k[j], prev)
            row_i[k] = gmpy2.mpz(0)
        prev = akk
    x = [gmpy2.mpq(0)] * n
    for i in range(n - 1, -1, -1):
        s = gmpy2.mpq(a[i][n])
        for j in range(i + 1, n):
            s -= a[i][j] * x[j]
        x[i] = s / a[i][i]
    return x


def _to_fraction(q) -> Fraction:
    return Fraction(int(gmpy2.numer(q)), int(gmpy2.denom(q)))


def build_pade(taylor: Sequence, L: int, M: int, variable: str = "r") -> PadeApproximant:
    """[L/M] with denominator(0) = 1 from at least L + M + 1 Taylor coefficients."""
    if L < 0 or M < 0:
        raise ValueError("L and M must be non-negative")
    if len(taylor) < L + M + 1:
        raise ValidationError(f"[{L}/{M}] needs {L + M + 1} Taylor coefficients, got {len(taylor)}")
    taylor = [Fraction(t) for t in taylor[: L + M + 1]]
    t = _integer_scaled(taylor)

    def c(i):
        return t[i] if i >= 0 else gmpy2.mpz(0)

    if M:
        # sum_{j=1}^{M} c_{L+i-j} d_j = -c_{L+i}, i = 1..M
        matrix = [[c(L + i - j) for j in range(1, M + 1)] for i in range(1, M + 1)]
        rhs = [-c(L + i) for i in range(1, M + 1)]
        d = [Fraction(1)] + [_to_fraction(v) for v in _bareiss_solve(matrix, rhs)]
    else:
        d = [Fraction(1)]
    num = [sum(d[j] * taylor[i - j] for j in range(0, min(i, M) + 1)) for i in range(L + 1)]
    return PadeApproximant(L, M, Poly.from_coeffs(num), Poly.from_coeffs(d), variable)


def taylor_of_ratio(numerator: Poly, denominator: Poly, order: int) -> list[Fraction]:
    """Power-series coefficients of N/D through ``order`` (needs D(0) != 0)."""
    n = list(numerator.coeffs) + [Fraction(0)] * (order + 1)
    d = list(denominator.coeffs)
    d0 = d[0]
    out: list[Fraction] = []
    for i in range(order + 1):
        s = n[i] - sum(d[j] * out[i - j] for j in range(1, min(i, len(d) - 1) + 1))
        out.append(s / d0)
    return out


def order_condition_residual(p: PadeApproximant, taylor: Sequence) -> list[int]:
    """Orders i <= L+M where D*T - N has a nonzero coefficient (empty means exact match).

    Because D(0) = 1 this is equivalent to N/D re-expanding to T through L+M.
    Computed on integers scaled by the common denominators.
    """
    order = p.L + p.M
    t = _integer_scaled([Fraction(x) for x in taylor[: order + 1]])
    d = [gmpy2.mpz(v) for v in p.denominator.num]
    n = [gmpy2.mpz(v) for v in p.numerator.num]
    t_den = math.lcm(*(Fraction(x).denominator for x in taylor[: order + 1]))
    # D*T*t_den*d_den vs N*n_den scaled to the same footing
    lhs_scale = gmpy2.mpz(p.numerator.den)
    rhs_scale = gmpy2.mpz(t_den) * p.denominator.den
    bad = []
    for i in range(order + 1):
        dt = sum((d[j] * t[i - j] for j in range(min(i, len(d) - 1) + 1)), gmpy2.mpz(0))
        ni = n[i] if i < len(n) else gmpy2.mpz(0)
        if dt * lhs_scale != ni * rhs_scale:
            bad.append(i)
    return bad


def eval_pade(p: PadeApproximant, r: float, precision: int = 53, pole_tol: float = 1e-12) -> float:
    """N(x)/D(x) at x = r (or r^2), evaluated exactly then rounded."""
    x = Fraction(r)
    if p.variable == "r^2":
        x = x * x
    num = evaluate(p.numerator, x)
    den = evaluate(p.denominator, x)
    scale = sum(abs(c) * abs(x) ** i for i, c in enumerate(p.denominator.coeffs))
    if den == 0 or abs(den) < Fraction(pole_tol) * scale:
        raise NearPole(f"denominator {float(den):.3e} is below tolerance at r={r}")
    with mpmath.workprec(precision):
        value = mpmath.mpf(num.numerator) / num.denominator
        value = value * den.denominator / den.numerator
    return value if precision > 53 else float(value)


def even_part(taylor: Sequence[Fraction]) -> list[Fraction]:
    """Coefficients of g with f(r) = g(r^2); the odd coefficients must vanish."""
    odd = [i for i in range(1, len(taylor), 2) if taylor[i] != 0]
    if odd:
        raise ValidationError(f"series is not even in r: nonzero odd orders {odd[:5]}")
    return list(taylor[0::2])
