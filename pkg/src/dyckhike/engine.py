"""Sum of evaluated Dyck paths through the nested recursive summing formula.

With ``f(p) = lambda_p mu_p`` the stage polynomials are

    F_0 = 1,   F_j(M) = sum_{m=j}^{M} f(m - j + 1) * F_{j-1}(m),

and the coefficient of the normalized ladder state psi^(delta2) in
``(A^dagger +- A)^k psi^(0)`` is

    sqrt(prod_{i<=delta2} f(i)) * F_j(M),   j = (k - delta2)/2,  M = (k + delta2)/2,

times ``(-1)^j`` for the minus sign. One cache of stages serves every
``delta2`` because only the common upper bound ``M`` changes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .boson import LadderPolynomial, LadderTable
from .dyck import PathSpec, count_paths, enumerate_words
from .errors import EmptySpec, TowerExhausted
from .polynomial import Poly, definite_sum, evaluate, shift
from .radical import ONE, ZERO, RatRadical

PLUS, MINUS = "plus", "minus"
Ladder = Union[LadderPolynomial, LadderTable]


def _check_sign(sign_mode: str) -> None:
    if sign_mode not in (PLUS, MINUS):
        raise ValueError(f"sign_mode must be 'plus' or 'minus', got {sign_mode!r}")


@dataclass
class NestedSumCache:
    source: LadderPolynomial
    stage_polys: list[Poly] = field(default_factory=list)

    @property
    def depth(self) -> int:
        return len(self.stage_polys)

    def extend(self, j_max: int) -> None:
        f = self.source.poly
        prev = self.stage_polys[-1] if self.stage_polys else Poly.constant(1)
        for j in range(self.depth + 1, j_max + 1):
            summand = shift(f, -(j - 1)) * prev
            prev = definite_sum(summand, j)
            self.stage_polys.append(prev)

    def stage(self, j: int) -> Poly:
        if j == 0:
            return Poly.constant(1)
        self.extend(j)
        return self.stage_polys[j - 1]

    def value(self, j: int, upper: int) -> Fraction:
        return evaluate(self.stage(j), upper)


def build_cache(lp: LadderPolynomial, j_max: int) -> NestedSumCache:
    if j_max < 1:
        raise ValueError("j_max must be at least 1")
    cache = NestedSumCache(lp)
    cache.extend(j_max)
    return cache


@dataclass(frozen=True)
class PowerResult:
    k: int
    sign_mode: str
    coeffs: dict[int, RatRadical]


def _table_values(table: LadderTable, needed: int) -> list[Fraction]:
    """f(1..needed) from a table; zeros past a terminated tower."""
    end = table.terminates_at
    if end is None and len(table) < needed:
        raise TowerExhausted(
            f"ladder table has {len(table)} entries and no termination; {needed} needed"
        )
    return [table[p] if p <= len(table) else Fraction(0) for p in range(1, needed + 1)]


class DyckSumEngine:
    """Memoized power coefficients for one ladder.

    Polynomial mode runs the symbolic nested sums. Table mode runs the same
    recurrence on integer points and is used whenever the tower terminates
    inside the requested range.
    """

    def __init__(self, ladder: Ladder):
        self.ladder = ladder
        if isinstance(ladder, LadderPolynomial):
            self.table = ladder.table
            self.cache: Optional[NestedSumCache] = NestedSumCache(ladder)
        else:
            self.table = ladder
            self.cache = None
        self.end = self.table.terminates_at if self.table is not None else None
        self._prefactors: list[RatRadical] = [ONE]
        self._grid: list[list[Fraction]] = []
        self._grid_upper = -1
        self._results: dict[tuple[int, str], PowerResult] = {}
        self.hits = 0
        self.misses = 0

    @property
    def mode(self) -> str:
        return "table" if self.cache is None or self.end is not None else "poly"

    def f(self, p: int) -> Fraction:
        if self.table is not None and p <= len(self.table):
            return self.table[p]
        if self.end is not None:
            return Fraction(0)
        if self.cache is None:
            raise TowerExhausted(f"ladder table ends at p={len(self.table)}, p={p} needed")
        return self.ladder(p)

    def prefactor(self, delta2: int) -> RatRadical:
        """sqrt(prod_{i<=delta2} lambda_i mu_i), i.e. prod lambda_i."""
        while len(self._prefactors) <= delta2:
            p = len(self._prefactors)
            self._prefactors.append(self._prefactors[-1] * RatRadical.sqrt(self.f(p)))
        return self._prefactors[delta2]

    def _check_poly_range(self, upper: int) -> None:
        if self.table is None or self.mode != "poly":
            return
        for p in range(len(self.table) + 1, upper + 1):
            if self.ladder(p) == 0:
                raise TowerExhausted(
                    f"interpolated ladder vanishes at p={p} beyond the validated table "
                    f"(length {len(self.table)}); extend the table"
                )

    def _grid_value(self, j: int, upper: int) -> Fraction:
        if upper > self._grid_upper:
            self._build_grid(max(upper, 2 * self._grid_upper))
        return self._grid[j][upper]

    def _build_grid(self, upper: int) -> None:
        vals = [Fraction(0)] + [self.f(p) for p in range(1, upper + 1)]
        grid = [[Fraction(1)] * (upper + 1)]
        for j in range(1, upper + 1):
            prev = grid[-1]
            row = [Fraction(0)] * (upper + 1)
            acc = Fraction(0)
            for m in range(j, upper + 1):
                acc += vals[m - j + 1] * prev[m]
                row[m] = acc
            grid.append(row)
        self._grid = grid
        self._grid_upper = upper

    def nested_value(self, j: int, upper: int) -> Fraction:
        """F_j(upper) for upper >= j."""
        if j == 0:
            return Fraction(1)
        if self.mode == "poly":
            return self.cache.value(j, upper)
        return self._grid_value(j, upper)

    def power(self, k: int, sign_mode: str = PLUS) -> PowerResult:
        _check_sign(sign_mode)
        if k < 0:
            raise ValueError("k must be non-negative")
        key = (k, sign_mode)
        if key in self._results:
            self.hits += 1
            return self._results[key]
        self.misses += 1
        self._check_poly_range(k)
        coeffs = {}
        for delta2 in range(k % 2, k + 1, 2):
            if self.end is not None and delta2 >= self.end:
                break
            j, upper = (k - delta2) // 2, (k + delta2) // 2
            c = self.prefactor(delta2) * self.nested_value(j, upper)
            if sign_mode == MINUS and j % 2:
                c = -c
            coeffs[delta2] = c
        result = PowerResult(k, sign_mode, coeffs)
        self._results[key] = result
        return result


def power_coefficients(ladder: Ladder, k: int, sign_mode: str = PLUS) -> PowerResult:
    return DyckSumEngine(ladder).power(k, sign_mode)


def _step_values(table: Ladder, top: int) -> list[RatRadical]:
    """lambda_h = mu_h = sqrt(lambda_h mu_h) for h = 1..top (index 0 unused)."""
    if isinstance(table, LadderPolynomial):
        get = DyckSumEngine(table).f
    else:
        vals = _table_values(table, top)
        get = lambda p: vals[p - 1]  # noqa: E731
    return [ZERO] + [RatRadical.sqrt(get(h)) for h in range(1, top + 1)]


def evaluate_word(word, steps: list[RatRadical]) -> RatRadical:
    """Evaluate one path: an up step into height h gives lambda_h, a down step from h gives mu_h."""
    h = word.start_height
    value = ONE
    for s in word.reading_order():
        if s == "U":
            h += 1
            value = value * steps[h]
        else:
            value = value * steps[h]
            h -= 1
    return value


def enumeration_evaluate(table: Ladder, spec: PathSpec, sign_mode: str = PLUS) -> RatRadical:
    """Brute-force sum over every enumerated path of the spec (any start height)."""
    _check_sign(sign_mode)
    if count_paths(spec) == 0:
        raise EmptySpec(f"no Dyck path for {spec}")
    top = spec.delta1 + spec.ups
    steps = _step_values(table, top)
    total = ZERO
    for word in enumerate_words(spec):
        total = total + evaluate_word(word, steps)
    if sign_mode == MINUS and spec.downs % 2:
        total = -total
    return total
