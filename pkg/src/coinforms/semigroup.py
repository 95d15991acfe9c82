"""Ground-truth oracles computed straight from definitions: Apéry sets via
shortest paths on the residue graph, Frobenius numbers, non-representable
sets, and per-class minima of the shifted counting objective.

Nothing here relies on the synthesized piecewise formulas; these are the
independent checks everything else is certified against.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import ceil, gcd

from .coins import CoinSystem, count_table

# Cross-check sieves are engaged only below this bit budget.
SIEVE_LIMIT = 10**7


@dataclass(frozen=True)
class Instance:
    """A concrete shifted system: generators (a, h*a + d*b_1, ..., h*a + d*b_k).

    Requires a >= 2, h, d >= 1, gcd(a, d) = 1. Together with gcd(denoms) = 1
    this makes the full generator set coprime, so the Frobenius number exists.
    """

    a: int
    h: int
    d: int
    coins: CoinSystem
    generators: tuple[int, ...] = field(init=False)

    def __post_init__(self) -> None:
        if self.a < 2:
            raise ValueError("modulus a must be at least 2")
        if self.h < 1 or self.d < 1:
            raise ValueError("h and d must be positive")
        if gcd(self.a, self.d) != 1:
            raise ValueError(f"gcd(a, d) must be 1, got gcd({self.a}, {self.d})")
        gens = (self.a,) + tuple(self.h * self.a + self.d * b for b in self.coins.denoms)
        if any(x >= y for x, y in zip(gens, gens[1:])):
            raise ValueError(f"generators must be strictly increasing: {gens}")
        object.__setattr__(self, "generators", gens)


@dataclass(frozen=True)
class AperySet:
    """Least semigroup element in each residue class mod a; values[0] = 0."""

    instance: Instance
    values: tuple[int, ...]

    def frobenius(self) -> int:
        return max(self.values) - self.instance.a


def apery(instance: Instance) -> AperySet:
    """Apéry set by round-robin shortest paths on the residue graph mod a.

    Each non-modulus generator g is folded in one at a time: its action splits
    the residues into gcd(a, g) cycles, and one relaxation sweep around each
    cycle, started at the cycle's current minimum, is exact (any path wrapping
    past the minimum is dominated by starting at the minimum instead).
    """
    a = instance.a
    dist: list[int | float] = [0] + [float("inf")] * (a - 1)
    for g in instance.generators[1:]:
        step = g % a
        if step == 0:
            continue
        n_cycles = gcd(a, step)
        cycle_len = a // n_cycles
        for start in range(n_cycles):
            p, best_p, best_v = start, start, dist[start]
            for _ in range(cycle_len - 1):
                p = (p + step) % a
                if dist[p] < best_v:
                    best_v, best_p = dist[p], p
            p = best_p
            for _ in range(cycle_len - 1):
                q = (p + step) % a
                if dist[p] + g < dist[q]:
                    dist[q] = dist[p] + g
                p = q
    if any(v == float("inf") for v in dist):
        raise ValueError(f"generators do not span all residues mod {a} (gcd > 1?)")
    return AperySet(instance=instance, values=tuple(int(v) for v in dist))


def reachable_bits(generators: tuple[int, ...], limit: int) -> int:
    """Bitset of amounts in [0, limit] representable over the generators.

    Bit n is set iff n is a nonnegative combination. Closure under each
    generator g is taken by doubling shifts (g, 2g, 4g, ...), so the whole
    sieve is a handful of big-integer shift-or operations.
    """
    mask = (1 << (limit + 1)) - 1
    bits = 1
    for g in generators:
        step = g
        while step <= limit:
            bits = (bits | (bits << step)) & mask
            step <<= 1
    return bits


def _sieve_check(instance: Instance, candidate: int) -> None:
    """Verify a Frobenius candidate against a direct representability sieve.

    The sieve must show the candidate itself unreachable and everything in
    (candidate, bound] reachable. When bound >= candidate + a this is a full
    proof (a consecutive representables imply all larger amounts are too).
    """
    a = instance.a
    bound = max(candidate + 1, a * instance.coins.largest * instance.h * instance.d)
    bits = reachable_bits(instance.generators, bound)
    if candidate >= 0 and (bits >> candidate) & 1:
        raise ArithmeticError(f"oracle disagreement: sieve reaches {candidate} for {instance.generators}")
    above = bound - candidate
    window = (bits >> (candidate + 1)) & ((1 << above) - 1)
    if window != (1 << above) - 1:
        missing = candidate + 1
        while (bits >> missing) & 1:
            missing += 1
        raise ArithmeticError(f"oracle disagreement: sieve misses {missing} for {instance.generators}")


def frobenius_oracle(instance: Instance, cross_check: bool | None = None) -> int:
    """Frobenius number: max of the Apéry set minus a.

    ``cross_check=None`` engages the independent sieve automatically whenever
    its bound fits in SIEVE_LIMIT bits; pass False to skip it (bulk scans) or
    True to force it.
    """
    g = apery(instance).frobenius()
    if cross_check is None:
        bound = max(g + 1, instance.a * instance.coins.largest * instance.h * instance.d)
        cross_check = bound <= SIEVE_LIMIT
    if cross_check:
        _sieve_check(instance, g)
    return g


def non_representables(system: CoinSystem) -> tuple[frozenset[int], int]:
    """The finite set of amounts with no representation over the system, and
    its maximum (the system's own Frobenius number).

    Unit-leading systems represent everything: returns (empty set, -1). The
    search window doubles until the top gap is followed by b_1 consecutive
    representables, which certifies that no gaps exist beyond it.
    """
    if system.unit_leading:
        return frozenset(), -1
    b1 = system.denoms[0]
    limit = 4 * system.largest
    while True:
        bits = reachable_bits(system.denoms, limit)
        top_gap = (((1 << (limit + 1)) - 1) & ~bits).bit_length() - 1
        run = (1 << b1) - 1
        if top_gap + b1 <= limit and (bits >> (top_gap + 1)) & run == run:
            gaps = frozenset(n for n in range(top_gap + 1) if not (bits >> n) & 1)
            return gaps, top_gap
        limit *= 2


def n_dr(instance: Instance, r: int) -> int:
    """Least value of opt_count(m*a + r) * h*a + (m*a + r) * d over m >= 0.

    This is the Apéry value of the class d*r mod a, expressed through the
    change-making table of the underlying system. Amounts m*a + r with no
    representation are skipped; the scan stops once the count lower bound
    ceil(M / b_k) makes every later m worse than the best found.
    """
    a, h, d = instance.a, instance.h, instance.d
    if not 0 <= r < a:
        raise ValueError(f"residue must lie in [0, {a}), got {r}")
    system = instance.coins
    bk = system.largest
    table = count_table(system, r)

    best: int | None = None
    m = 0
    while True:
        amount = m * a + r
        if amount >= len(table):
            table = count_table(system, max(amount, 2 * len(table)))
        floor_value = ceil(amount / bk) * h * a + amount * d
        if best is not None and floor_value > best:
            return best
        count = table[amount]
        if count is not None:
            value = count * h * a + amount * d
            if best is None or value < best:
                best = value
        m += 1
