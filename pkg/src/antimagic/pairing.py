"""Pairings of consecutive {1,2}-label blocks with prescribed 0-sums.

``J(p, k) = {p+3i-2, p+3i-1 : 1 <= i <= k}`` and
``J'(p, k) = {p+3i-1, p+3i+1 : 1 <= i <= k}`` for a multiple of three ``p``.
The pairings below use fixed index formulas, so they cost O(k).
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ContractError

__all__ = ["LabelPair", "pair_J", "pair_Jprime", "J_labels", "Jprime_labels", "pair_to_sum"]


@dataclass(frozen=True, order=True)
class LabelPair:
    lo: int
    hi: int

    def __post_init__(self):
        if self.lo >= self.hi:
            raise ValueError(f"pair ({self.lo}, {self.hi}) is not increasing")

    @property
    def sum(self) -> int:
        return self.lo + self.hi

    @classmethod
    def of(cls, a: int, b: int) -> "LabelPair":
        return cls(min(a, b), max(a, b))


def _check(p: int, k: int) -> None:
    if p % 3 != 0:
        raise ContractError(f"p = {p} is not a multiple of 3")
    if k < 1:
        raise ContractError(f"k = {k} must be positive")


def J_labels(p: int, k: int) -> list[int]:
    return sorted([p + 3 * i - 2 for i in range(1, k + 1)] + [p + 3 * i - 1 for i in range(1, k + 1)])


def Jprime_labels(p: int, k: int) -> list[int]:
    return sorted([p + 3 * i - 1 for i in range(1, k + 1)] + [p + 3 * i + 1 for i in range(1, k + 1)])


def pair_J(p: int, k: int) -> list[LabelPair]:
    """Pair ``J(p, k)``; the sums form a run of consecutive multiples of three
    (odd ``k``) or such a run of length ``k-1`` plus ``2p+3`` (even ``k``)."""
    _check(p, k)
    out = []
    if k % 2:
        q = k // 2
        out += [LabelPair.of(p + 3 * i - 2, p + 3 * (q + i) - 1) for i in range(1, q + 2)]
        out += [LabelPair.of(p + 3 * i - 1, p + 3 * (q + 1 + i) - 2) for i in range(1, q + 1)]
    else:
        q = k // 2
        out.append(LabelPair.of(p + 1, p + 2))
        out += [LabelPair.of(p + 3 * (i + 1) - 2, p + 3 * (q + i) - 1) for i in range(1, q + 1)]
        out += [LabelPair.of(p + 3 * (i + 1) - 1, p + 3 * (q + 1 + i) - 2) for i in range(1, q)]
    return sorted(out, key=lambda t: t.sum)


def pair_Jprime(p: int, k: int) -> list[LabelPair]:
    """Pair ``J'(p, k)``; same shape as :func:`pair_J` with sums shifted up."""
    _check(p, k)
    out = []
    if k % 2:
        q = k // 2
        out += [LabelPair.of(p + 3 * i - 1, p + 3 * (q + i) + 1) for i in range(1, q + 2)]
        out += [LabelPair.of(p + 3 * i + 1, p + 3 * (q + 1 + i) - 1) for i in range(1, q + 1)]
    else:
        q = k // 2
        out.append(LabelPair.of(p + 2, p + 4))
        out += [LabelPair.of(p + 3 * (i + 1) - 1, p + 3 * (q + i) + 1) for i in range(1, q + 1)]
        out += [LabelPair.of(p + 3 * (i + 1) + 1, p + 3 * (q + 1 + i) - 1) for i in range(1, q)]
    return sorted(out, key=lambda t: t.sum)


def pair_to_sum(ones: list[int], twos: list[int], target: int) -> list[tuple[int, int]]:
    """Match each 1-label with a 2-label so every pair sums to ``target``.

    Returns ``(one, two)`` tuples in increasing order of the 1-label.
    """
    if len(ones) != len(twos):
        raise ContractError("class sizes differ")
    avail = set(twos)
    out = []
    for a in sorted(ones):
        b = target - a
        if b not in avail:
            raise ContractError(f"no partner for {a} summing to {target}")
        avail.remove(b)
        out.append((a, b))
    return out
