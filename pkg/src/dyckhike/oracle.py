"""Brute-force reference: act with (A^dagger +- A) directly on Fock vectors.

Nothing here touches the nested-sum engine; results are exponential-time
ground truth for small k.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .boson import (
    BosonExpr,
    FockState,
    FockVector,
    apply_expr,
    check_vacuum,
    ladder_states,
)
from .dyck import PathSpec, count_paths, enumerate_words
from .errors import NotAVacuum, ResidualOutsideTower, TruncationBreach
from .radical import ZERO, RatRadical


@dataclass(frozen=True)
class TruncationPolicy:
    max_total_quanta: int = 10_000
    max_per_mode: int = 10_000

    def __post_init__(self):
        if self.max_total_quanta < 1 or self.max_per_mode < 1:
            raise ValueError("truncation limits must be positive")

    def check(self, v: FockVector) -> None:
        for s in v:
            if s.total > self.max_total_quanta or max(s.occ, default=0) > self.max_per_mode:
                raise TruncationBreach(f"state {s} exceeds truncation policy {self}")


def _require_vacuum(expr: BosonExpr, vac: FockState) -> None:
    if not check_vacuum(expr, vac):
        raise NotAVacuum(f"{vac} is not annihilated by {expr}")


def oracle_power(
    expr: BosonExpr,
    vac: FockState,
    k: int,
    sign_mode: str = "plus",
    policy: TruncationPolicy = TruncationPolicy(),
) -> FockVector:
    """(A^dagger +- A)^k |vac> by k successive applications."""
    _require_vacuum(expr, vac)
    raise_op = expr.adjoint()
    v = FockVector.basis(vac)
    for _ in range(k):
        up, down = apply_expr(raise_op, v), apply_expr(expr, v)
        v = up - down if sign_mode == "minus" else up + down
        policy.check(v)
    return v


def apply_word(expr: BosonExpr, word: str, v: FockVector) -> FockVector:
    """Apply a step word (U -> A^dagger, D -> A), rightmost letter first."""
    raise_op = expr.adjoint()
    for s in reversed(word):
        v = apply_expr(raise_op if s == "U" else expr, v)
        if v.is_zero():
            break
    return v


def oracle_ladder_decomposition(
    expr: BosonExpr, vac: FockState, v: FockVector, p_max: int
) -> dict[int, RatRadical]:
    """Coefficients of ``v`` on the normalized ladder states psi^(0..p_max).

    Zero coefficients are omitted. Raises if ``v`` has a component outside the
    span of the tower.
    """
    tower = ladder_states(expr, vac, p_max)
    coeffs: dict[int, RatRadical] = {}
    residual = v
    for p, psi in enumerate(tower):
        overlap = psi.inner(v)
        if overlap.is_zero():
            continue
        nsq = psi.norm_sq()
        coeffs[p] = overlap * RatRadical.sqrt(1 / nsq)
        residual = residual - psi.scale(overlap / nsq)
    if not residual.is_zero():
        raise ResidualOutsideTower(f"{len(residual)} basis states remain outside the ladder span")
    return coeffs


def oracle_word_expansion(
    expr: BosonExpr, vac: FockState, k: int, delta2: int, sign_mode: str = "plus"
) -> RatRadical:
    """Sum every Dyck word of D(k, 0, delta2) as a boson word; project onto psi^(delta2)."""
    _require_vacuum(expr, vac)
    spec = PathSpec(k, 0, delta2)
    if count_paths(spec) == 0:
        return ZERO
    total = FockVector()
    for w in enumerate_words(spec):
        total = total + apply_word(expr, w.steps, FockVector.basis(vac))
    if sign_mode == "minus" and spec.downs % 2:
        total = -total
    return oracle_ladder_decomposition(expr, vac, total, delta2).get(delta2, ZERO)


def nonvanishing_words(expr: BosonExpr, vac: FockState, k: int) -> set[str]:
    """All 2^k step words whose boson word does not annihilate ``vac``."""
    _require_vacuum(expr, vac)
    out = set()
    start = FockVector.basis(vac)
    for letters in product("UD", repeat=k):
        word = "".join(letters)
        if not apply_word(expr, word, start).is_zero():
            out.add(word)
    return out


def dyck_word_image(k: int) -> set[str]:
    """Step strings of every D(k, 0, delta2) over all delta2."""
    return {
        w.steps for d2 in range(k % 2, k + 1, 2) for w in enumerate_words(PathSpec(k, 0, d2))
    }
