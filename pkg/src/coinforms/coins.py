"""Change-making core: optimal and greedy coin counts over a fixed denomination
sequence, and the greedy-optimality (orderliness) decision.

Amounts with no representation (possible only when the smallest denomination
exceeds 1) are reported as ``NON_REPRESENTABLE``, which is ``None``: it never
enters arithmetic by accident, any attempt raises immediately.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import gcd

NON_REPRESENTABLE = None

# A coin count: a nonnegative int, or NON_REPRESENTABLE.
Count = int | None


@dataclass(frozen=True)
class CoinSystem:
    """A strictly increasing sequence of positive denominations with gcd 1."""

    denoms: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.denoms:
            raise ValueError("coin system needs at least one denomination")
        if any(not isinstance(b, int) or b < 1 for b in self.denoms):
            raise ValueError(f"denominations must be positive integers: {self.denoms}")
        if any(x >= y for x, y in zip(self.denoms, self.denoms[1:])):
            raise ValueError(f"denominations must be strictly increasing: {self.denoms}")
        if reduce(gcd, self.denoms) != 1:
            raise ValueError(f"gcd of denominations must be 1: {self.denoms}")

    @classmethod
    def of(cls, *denoms: int) -> CoinSystem:
        return cls(tuple(denoms))

    @classmethod
    def parse(cls, text: str) -> CoinSystem:
        """Parse a comma-separated denomination list such as ``"1,11,14"``."""
        try:
            values = tuple(int(part) for part in text.split(","))
        except ValueError:
            raise ValueError(f"cannot parse denomination list: {text!r}") from None
        return cls(values)

    @property
    def k(self) -> int:
        return len(self.denoms)

    @property
    def unit_leading(self) -> bool:
        return self.denoms[0] == 1

    @property
    def largest(self) -> int:
        return self.denoms[-1]

    def __str__(self) -> str:
        return "(" + ",".join(str(b) for b in self.denoms) + ")"


def count_table(system: CoinSystem, limit: int) -> list[Count]:
    """Dense table of optimal coin counts for every amount in [0, limit].

    Forward unbounded-knapsack recurrence, O(k * limit). Entry n is the least
    number of coins summing to n, or NON_REPRESENTABLE when no combination
    exists (never happens for unit-leading systems).
    """
    if limit < 0:
        raise ValueError("limit must be nonnegative")
    denoms = system.denoms
    table: list[Count] = [0] + [NON_REPRESENTABLE] * limit
    for n in range(1, limit + 1):
        best = None
        for b in denoms:
            if b > n:
                break
            prev = table[n - b]
            if prev is not None and (best is None or prev + 1 < best):
                best = prev + 1
        table[n] = best
    return table


def opt_count(system: CoinSystem, amount: int) -> Count:
    """Least number of coins summing to ``amount`` (NON_REPRESENTABLE if none)."""
    if amount < 0:
        raise ValueError("amount must be nonnegative")
    return count_table(system, amount)[amount]


def greedy_count(system: CoinSystem, amount: int) -> int:
    """Coins used by the largest-denomination-first strategy.

    Only defined for unit-leading systems, where greedy always terminates
    exactly; rejects anything else.
    """
    if amount < 0:
        raise ValueError("amount must be nonnegative")
    if not system.unit_leading:
        raise ValueError("greedy strategy requires the unit coin (smallest denomination 1)")
    used = 0
    for b in reversed(system.denoms):
        q, amount = divmod(amount, b)
        used += q
    return used


@dataclass(frozen=True)
class OrderlyVerdict:
    """Outcome of the greedy-optimality decision.

    When non-orderly, ``counterexample`` is the smallest amount where the
    optimal count beats greedy, with both counts recorded.
    """

    orderly: bool
    counterexample: int | None = None
    optimal: int | None = None
    greedy: int | None = None


def is_orderly(system: CoinSystem) -> OrderlyVerdict:
    """Decide whether greedy is optimal for every amount.

    Checks all amounts below b_{k-1} + b_k exhaustively. The smallest
    counterexample of a non-orderly system, if one exists, always lies below
    that bound (the classical canonical coin system result), so the exhaustive
    window decides the question for all amounts.
    """
    if not system.unit_leading:
        raise ValueError("orderliness is defined for unit-leading systems only")
    if system.k == 1:
        return OrderlyVerdict(orderly=True)
    bound = system.denoms[-2] + system.denoms[-1]
    table = count_table(system, bound - 1)
    for amount in range(bound):
        opt = table[amount]
        grd = greedy_count(system, amount)
        if opt != grd:
            return OrderlyVerdict(orderly=False, counterexample=amount, optimal=opt, greedy=grd)
    return OrderlyVerdict(orderly=True)
