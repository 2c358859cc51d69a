"""Generalized Dyck paths D(k, delta1, delta2): counting, extremal words, enumeration.

Words are strings over ``U``/``D`` written left to right but *applied right to
left*: ``"DU"`` from height 0 first steps up, then down.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

from .errors import EmptySpec


@dataclass(frozen=True)
class PathSpec:
    k: int
    delta1: int = 0
    delta2: int = 0

    def __post_init__(self):
        if min(self.k, self.delta1, self.delta2) < 0:
            raise ValueError(f"path parameters must be non-negative: {self}")

    @property
    def ups(self) -> int:
        return (self.k - self.delta1 + self.delta2) // 2

    @property
    def downs(self) -> int:
        return (self.k + self.delta1 - self.delta2) // 2

    @property
    def is_empty(self) -> bool:
        return count_paths(self) == 0


@dataclass(frozen=True)
class DyckWord:
    steps: str
    start_height: int = 0

    def __post_init__(self):
        if set(self.steps) - {"U", "D"}:
            raise ValueError(f"Dyck words use only U and D, got {self.steps!r}")

    def __len__(self):
        return len(self.steps)

    def reading_order(self) -> str:
        return self.steps[::-1]

    def heights(self) -> list[int]:
        """Heights after each step in reading order, starting height first."""
        h = self.start_height
        out = [h]
        for s in self.reading_order():
            h += 1 if s == "U" else -1
            out.append(h)
        return out

    @property
    def end_height(self) -> int:
        return self.start_height + self.steps.count("U") - self.steps.count("D")

    def __str__(self):
        return self.steps


def _binom(n: int, r: int) -> int:
    if r < 0 or r > n:
        return 0
    return math.comb(n, r)


def count_paths(spec: PathSpec) -> int:
    """Ballot-problem count via two binomials (reflection principle)."""
    k, d1, d2 = spec.k, spec.delta1, spec.delta2
    if (k + d1 + d2) % 2 or abs(d1 - d2) > k:
        return 0
    return _binom(k, (k + d2 - d1) // 2) - _binom(k, (k - d2 - d1 - 2) // 2)


def _reachable(h: int, remaining: int, target: int) -> bool:
    return h >= 0 and abs(h - target) <= remaining and (remaining - abs(h - target)) % 2 == 0


def _greedy_word(spec: PathSpec, prefer: str) -> DyckWord:
    if count_paths(spec) == 0:
        raise EmptySpec(f"no Dyck path for {spec}")
    h = spec.delta1
    read = []
    other = "D" if prefer == "U" else "U"
    for remaining in range(spec.k - 1, -1, -1):
        for step in (prefer, other):
            nh = h + (1 if step == "U" else -1)
            if _reachable(nh, remaining, spec.delta2):
                read.append(step)
                h = nh
                break
    return DyckWord("".join(reversed(read)), spec.delta1)


def highest_word(spec: PathSpec) -> DyckWord:
    """All U steps applied first: written ``D^downs U^ups``."""
    if count_paths(spec) == 0:
        raise EmptySpec(f"no Dyck path for {spec}")
    return DyckWord("D" * spec.downs + "U" * spec.ups, spec.delta1)


def lowest_word(spec: PathSpec) -> DyckWord:
    """Pointwise lowest path: step down whenever the end point stays reachable."""
    return _greedy_word(spec, "D")


def enumerate_words(spec: PathSpec) -> Iterator[DyckWord]:
    """Every path of the spec, by backtracking over valid prefixes (U before D)."""
    k, target = spec.k, spec.delta2
    if count_paths(spec) == 0:
        return
    read: list[str] = []

    def walk(h: int, remaining: int):
        if remaining == 0:
            yield DyckWord("".join(reversed(read)), spec.delta1)
            return
        for step, dh in (("U", 1), ("D", -1)):
            if _reachable(h + dh, remaining - 1, target):
                read.append(step)
                yield from walk(h + dh, remaining - 1)
                read.pop()

    yield from walk(spec.delta1, k)


def is_valid(word: DyckWord) -> bool:
    return min(word.heights()) >= 0


def swap_moves(word: DyckWord) -> list[DyckWord]:
    """All words reachable by one application of ``d_i u_i -> u_{i-1} d_{i-1}``.

    In reading order this turns a peak at height ``i`` (up then down) into a
    valley at height ``i - 2``; it is admissible only for ``i >= 2``.
    """
    read = word.reading_order()
    heights = word.heights()
    out = []
    for pos in range(len(read) - 1):
        if read[pos] == "U" and read[pos + 1] == "D" and heights[pos + 1] >= 2:
            new = read[:pos] + "DU" + read[pos + 2 :]
            out.append(DyckWord(new[::-1], word.start_height))
    return out
