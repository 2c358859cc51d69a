"""Multimode boson expressions acting on Fock vectors with exact amplitudes.

Factors inside a monomial act right to left, as operators do. ``A`` is always
the expression the user supplies; ``A^dagger`` is obtained with
:meth:`BosonExpr.dagger` and raises the ladder.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping, Optional

from .errors import (
    InsufficientTower,
    InterpolationMismatch,
    NotAVacuum,
    NotProportional,
)
from .polynomial import Poly, evaluate, interpolate_consecutive
from .radical import ONE, ZERO, RatRadical


@dataclass(frozen=True)
class BosonFactor:
    mode: int
    dagger: bool
    power: int = 1

    def __post_init__(self):
        if self.mode < 0:
            raise ValueError("mode index must be non-negative")
        if self.power < 1:
            raise ValueError("factor power must be at least 1")

    def adjoint(self) -> "BosonFactor":
        return BosonFactor(self.mode, not self.dagger, self.power)

    def __str__(self):
        name = "ad" if self.dagger else "a"
        return f"{name}[{self.mode}]" + (f"^{self.power}" if self.power > 1 else "")


@dataclass(frozen=True)
class Monomial:
    factors: tuple[BosonFactor, ...]

    def __post_init__(self):
        if not self.factors:
            raise ValueError("a monomial needs at least one factor")

    @property
    def length(self) -> int:
        return sum(f.power for f in self.factors)

    @property
    def modes(self) -> frozenset[int]:
        return frozenset(f.mode for f in self.factors)

    def adjoint(self) -> "Monomial":
        return Monomial(tuple(f.adjoint() for f in reversed(self.factors)))

    def exponent_profile(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Sorted per-mode creation and annihilation exponents (zeros dropped)."""
        cre, ann = Counter(), Counter()
        for f in self.factors:
            (cre if f.dagger else ann)[f.mode] += f.power
        return tuple(sorted(cre.values())), tuple(sorted(ann.values()))

    def __str__(self):
        return "*".join(str(f) for f in self.factors)


@dataclass(frozen=True)
class BosonExpr:
    terms: tuple[Monomial, ...]

    def adjoint(self) -> "BosonExpr":
        return BosonExpr(tuple(t.adjoint() for t in self.terms))

    dagger = adjoint

    @property
    def length(self) -> int:
        return self.terms[0].length if self.terms else 0

    @property
    def modes(self) -> frozenset[int]:
        return frozenset().union(*(t.modes for t in self.terms)) if self.terms else frozenset()

    def __str__(self):
        return " + ".join(str(t) for t in self.terms)


def monomial(*factors: tuple) -> Monomial:
    """Shorthand: ``monomial((0, True, 1), (2, False, 1))`` is ``ad[0]*a[2]``."""
    return Monomial(tuple(BosonFactor(*f) for f in factors))


@dataclass(frozen=True, order=True)
class FockState:
    """Occupation numbers by mode; trailing zeros are stripped so equal states hash equal."""

    occ: tuple[int, ...] = ()

    def __post_init__(self):
        occ = list(self.occ)
        if any(n < 0 for n in occ):
            raise ValueError("occupation numbers must be non-negative")
        while occ and occ[-1] == 0:
            occ.pop()
        object.__setattr__(self, "occ", tuple(occ))

    @classmethod
    def from_map(cls, occupations: Mapping[int, int]) -> "FockState":
        if not occupations:
            return cls()
        occ = [0] * (max(occupations) + 1)
        for mode, n in occupations.items():
            occ[mode] = n
        return cls(tuple(occ))

    def __getitem__(self, mode: int) -> int:
        return self.occ[mode] if mode < len(self.occ) else 0

    def replace(self, mode: int, n: int) -> "FockState":
        occ = list(self.occ) + [0] * max(0, mode + 1 - len(self.occ))
        occ[mode] = n
        return FockState(tuple(occ))

    @property
    def total(self) -> int:
        return sum(self.occ)

    def as_map(self) -> dict[int, int]:
        return {m: n for m, n in enumerate(self.occ) if n}

    def __str__(self):
        return "|" + ",".join(str(n) for n in (self.occ or (0,))) + ">"


class FockVector(Mapping):
    """Sparse vector over Fock states; zero amplitudes are never stored."""

    __slots__ = ("_amps",)

    def __init__(self, amplitudes: Optional[Mapping[FockState, RatRadical]] = None):
        self._amps = {s: a for s, a in (amplitudes or {}).items() if not a.is_zero()}

    @classmethod
    def basis(cls, state: FockState) -> "FockVector":
        return cls({state: ONE})

    def __getitem__(self, state):
        return self._amps[state]

    def get(self, state, default=ZERO):
        return self._amps.get(state, default)

    def __iter__(self) -> Iterator[FockState]:
        return iter(self._amps)

    def __len__(self):
        return len(self._amps)

    def __eq__(self, other):
        if not isinstance(other, FockVector):
            return NotImplemented
        return self._amps == other._amps

    def __hash__(self):
        return hash(frozenset(self._amps.items()))

    def is_zero(self) -> bool:
        return not self._amps

    def __add__(self, other: "FockVector") -> "FockVector":
        out = dict(self._amps)
        for s, a in other.items():
            out[s] = out.get(s, ZERO) + a
        return FockVector(out)

    def __neg__(self):
        return FockVector({s: -a for s, a in self._amps.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "FockVector":
        return FockVector({s: a * c for s, a in self._amps.items()})

    def inner(self, other: "FockVector") -> RatRadical:
        """<self|other> (amplitudes are real)."""
        total = ZERO
        small, big = (self, other) if len(self) <= len(other) else (other, self)
        for s, a in small.items():
            b = big._amps.get(s)
            if b is not None:
                total = total + a * b
        return total

    def norm_sq(self) -> Fraction:
        return sum((a.square() for a in self._amps.values()), Fraction(0))

    def __repr__(self):
        parts = [f"{a}{s}" for s, a in sorted(self._amps.items())]
        return "FockVector(" + (" + ".join(parts) or "0") + ")"


def _apply_factor(f: BosonFactor, state: FockState) -> Optional[tuple[FockState, RatRadical]]:
    n = state[f.mode]
    if f.dagger:
        factors = range(n + 1, n + f.power + 1)
        new = n + f.power
    else:
        if n < f.power:
            return None
        factors = range(n - f.power + 1, n + 1)
        new = n - f.power
    return state.replace(f.mode, new), RatRadical.sqrt_product(factors)


def apply_monomial(m: Monomial, v: FockVector) -> FockVector:
    out: dict[FockState, RatRadical] = {}
    for state, amp in v.items():
        for f in reversed(m.factors):
            step = _apply_factor(f, state)
            if step is None:
                break
            state, c = step
            amp = amp * c
        else:
            out[state] = out.get(state, ZERO) + amp
    return FockVector(out)


def apply_expr(expr: BosonExpr, v: FockVector) -> FockVector:
    out: dict[FockState, RatRadical] = {}
    for term in expr.terms:
        for s, a in apply_monomial(term, v).items():
            out[s] = out.get(s, ZERO) + a
    return FockVector(out)


def validate_disjoint(expr: BosonExpr) -> list[str]:
    """Reasons ``expr`` is not a sum of disjoint monomials of the same order."""
    problems = []
    if not expr.terms:
        return ["expression has no terms"]
    lengths = {t.length for t in expr.terms}
    if len(lengths) > 1:
        problems.append(f"terms have unequal lengths {sorted(lengths)}")
    seen: dict[int, int] = {}
    for i, t in enumerate(expr.terms):
        for mode in sorted(t.modes):
            if mode in seen:
                problems.append(f"mode {mode} appears in terms {seen[mode]} and {i}")
            else:
                seen[mode] = i
    profile = expr.terms[0].exponent_profile()
    for i, t in enumerate(expr.terms[1:], start=1):
        if t.exponent_profile() != profile:
            problems.append(f"term {i} exponents {t.exponent_profile()} are not a permutation of {profile}")
    return problems


def check_vacuum(expr: BosonExpr, vac: FockState) -> bool:
    return apply_expr(expr, FockVector.basis(vac)).is_zero()


def ladder_states(expr: BosonExpr, vac: FockState, p_max: int) -> list[FockVector]:
    """Unnormalized tower ``(A^dagger)^p |vac>`` for p = 0..p_max, cut where it vanishes."""
    if not check_vacuum(expr, vac):
        raise NotAVacuum(f"{vac} is not annihilated by {expr}")
    raise_op = expr.adjoint()
    states = [FockVector.basis(vac)]
    for _ in range(p_max):
        nxt = apply_expr(raise_op, states[-1])
        if nxt.is_zero():
            break
        states.append(nxt)
    return states


@dataclass(frozen=True)
class LadderTable:
    """``products[p - 1]`` is lambda_p * mu_p; a zero entry ends the tower."""

    products: tuple[Fraction, ...]
    max_p: int

    def __post_init__(self):
        if any(v < 0 for v in self.products):
            raise ValueError("ladder products must be non-negative")

    def __getitem__(self, p: int) -> Fraction:
        return self.products[p - 1]

    def __len__(self):
        return len(self.products)

    @property
    def terminates_at(self) -> Optional[int]:
        for p, v in enumerate(self.products, start=1):
            if v == 0:
                return p
        return None


def _ratio(num: RatRadical, den: RatRadical) -> Optional[Fraction]:
    if num.is_zero():
        return Fraction(0)
    if num.radicand != den.radicand:
        return None
    return num.rational / den.rational


def lambda_mu_table(expr: BosonExpr, vac: FockState, p_max: int) -> LadderTable:
    """Extract lambda_p mu_p from ``A A^dagger psi~(p-1) = lambda_p mu_p psi~(p-1)``."""
    if not check_vacuum(expr, vac):
        raise NotAVacuum(f"{vac} is not annihilated by {expr}")
    raise_op = expr.adjoint()
    psi = FockVector.basis(vac)
    products = []
    for p in range(1, p_max + 1):
        up = apply_expr(raise_op, psi)
        back = apply_expr(expr, up)
        if back.is_zero():
            products.append(Fraction(0))
            break
        pivot = min(psi)
        c = _ratio(back.get(pivot), psi[pivot])
        if c is None or set(back) != set(psi) or any(
            back[s] != psi[s] * c for s in psi
        ):
            raise NotProportional(
                f"A A^dagger is not a multiple of the identity on ladder state p={p - 1}"
            )
        products.append(c)
        psi = up
    return LadderTable(tuple(products), p_max)


@dataclass(frozen=True)
class LadderPolynomial:
    poly: Poly
    validated_up_to: int
    table: Optional[LadderTable] = field(default=None, compare=False)

    def __call__(self, p: int) -> Fraction:
        return evaluate(self.poly, p)

    @property
    def degree(self) -> int:
        return self.poly.degree


def lambda_mu_polynomial(table: LadderTable, d: int) -> LadderPolynomial:
    """Interpolate through p = 1..d+1, then check every remaining table entry."""
    if len(table) < d + 1:
        raise InsufficientTower(
            f"need {d + 1} ladder products to fit a degree-{d} polynomial, have {len(table)}"
        )
    poly = interpolate_consecutive(1, table.products[: d + 1])
    for p in range(d + 2, len(table) + 1):
        if evaluate(poly, p) != table[p]:
            raise InterpolationMismatch(
                f"degree-{d} fit predicts {evaluate(poly, p)} at p={p}, table has {table[p]}"
            )
    return LadderPolynomial(poly, len(table), table)


def constant_ladder(value: Fraction = Fraction(1), depth: int = 64) -> LadderPolynomial:
    """lambda_p mu_p == value for all p; with value 1 every path evaluates to 1."""
    value = Fraction(value)
    return LadderPolynomial(Poly.constant(value), depth, LadderTable((value,) * depth, depth))
