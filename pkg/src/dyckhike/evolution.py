"""Taylor series of ``exp[r(A^dagger - A)] psi^(0)`` per ladder level.

Every contribution at level ``delta2`` shares the prefactor
``prod_{i<=delta2} lambda_i``, so a level is stored as that radical times an
exact rational polynomial in ``r``. Floats appear only in :func:`evaluate_at`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

import mpmath

from .boson import (
    BosonExpr,
    FockState,
    lambda_mu_polynomial,
    lambda_mu_table,
)
from .engine import MINUS, DyckSumEngine
from .errors import InsufficientTower
from .radical import RatRadical


@dataclass
class SeriesResult:
    K: int
    sign_mode: str
    per_level: dict[int, list[tuple[int, RatRadical]]]
    prefactors: dict[int, RatRadical] = field(default_factory=dict)

    @property
    def assembled(self) -> dict[int, list[RatRadical]]:
        """c_k/k! coefficients of r^k, k = 0..K, per level."""
        out = {}
        for level, terms in self.per_level.items():
            row = [RatRadical() for _ in range(self.K + 1)]
            for k, c in terms:
                row[k] = c / math.factorial(k)
            out[level] = row
        return out

    def rational_series(self, level: int) -> list[Fraction]:
        """Taylor coefficients divided by the level prefactor (exact rationals)."""
        pre = self.prefactors[level]
        row = [Fraction(0)] * (self.K + 1)
        for k, c in self.per_level[level]:
            row[k] = (c / pre).as_rational() / math.factorial(k) if not c.is_zero() else Fraction(0)
        return row

    def vev_coefficients(self) -> list[Fraction]:
        """Taylor coefficients of the vacuum amplitude; rational by construction."""
        return self.rational_series(0)


def ladder_for(expr: BosonExpr, vac: FockState, depth: int):
    """Ladder table to ``depth`` plus its interpolating polynomial when one exists.

    The table always extends past the fit points so the polynomial is checked.
    """
    table = lambda_mu_table(expr, vac, max(depth, 2 * expr.length + 2))
    try:
        return lambda_mu_polynomial(table, expr.length)
    except InsufficientTower:
        if table.terminates_at is None:
            raise
        return table


def build_series(
    expr: BosonExpr,
    vac: FockState,
    K: int,
    sign_mode: str = MINUS,
    levels: Optional[Iterable[int]] = None,
    engine: Optional[DyckSumEngine] = None,
    table_depth: Optional[int] = None,
) -> SeriesResult:
    """Exact Taylor coefficients through order K; pass ``engine`` to reuse earlier orders."""
    if K < 0:
        raise ValueError("K must be non-negative")
    if engine is None:
        depth = K if table_depth is None else table_depth
        engine = DyckSumEngine(ladder_for(expr, vac, depth))
    wanted = None if levels is None else set(levels)
    per_level: dict[int, list[tuple[int, RatRadical]]] = {}
    prefactors: dict[int, RatRadical] = {}
    for k in range(K + 1):
        if wanted is not None and not any(d <= k and (k - d) % 2 == 0 for d in wanted):
            continue
        for d2, c in engine.power(k, sign_mode).coeffs.items():
            if wanted is not None and d2 not in wanted:
                continue
            per_level.setdefault(d2, []).append((k, c))
            prefactors[d2] = engine.prefactor(d2)
    return SeriesResult(K, sign_mode, per_level, prefactors)


def series_engine(expr: BosonExpr, vac: FockState, depth: int) -> DyckSumEngine:
    return DyckSumEngine(ladder_for(expr, vac, depth))


@dataclass(frozen=True)
class NumericAmplitudes:
    r: float
    amplitudes: dict[int, mpmath.mpf]
    vev: mpmath.mpf
    precision: int
    # amplitude truncated at orders K-2, K-1, K
    partial_sums: dict[int, tuple[mpmath.mpf, mpmath.mpf, mpmath.mpf]]


def _horner_exact(coeffs: list[Fraction], x: Fraction, upto: int) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs[: upto + 1]):
        acc = acc * x + c
    return acc


def evaluate_at(series: SeriesResult, r: float, precision: int = 53) -> NumericAmplitudes:
    """Evaluate each level at ``r``.

    The sum runs in exact rationals at the binary value of ``r``; only the
    radical prefactor and final rounding use ``precision`` bits.
    """
    if r < 0:
        raise ValueError("r must be non-negative")
    if precision < 53:
        raise ValueError("precision must be at least 53 bits")
    x = Fraction(r)
    K = series.K
    amps, partials = {}, {}
    with mpmath.workprec(precision):
        for level in sorted(series.per_level):
            coeffs = series.rational_series(level)
            pre = series.prefactors[level].to_mpf(precision)
            sums = []
            for upto in (K - 2, K - 1, K):
                if upto < 0:
                    sums.append(mpmath.mpf(0))
                    continue
                s = _horner_exact(coeffs, x, upto)
                sums.append(pre * mpmath.mpf(s.numerator) / s.denominator)
            amps[level] = sums[-1]
            partials[level] = tuple(sums)
    vev = amps.get(0, mpmath.mpf(0))
    return NumericAmplitudes(float(r), amps, vev, precision, partials)


def squeeze_reference(n: int, r: float) -> float:
    """Two-mode squeezed vacuum amplitude on |n>|n>: tanh(r)^n / cosh(r)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return math.tanh(r) ** n / math.cosh(r)
