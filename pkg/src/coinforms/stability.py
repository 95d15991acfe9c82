"""Truncated optimal-count tables, the window constants c and u, the shift
threshold past which counts grow arithmetically per residue class, and the
residue-decomposed table view.

The shift property says opt_count(n + b_k) = opt_count(n) + 1 for all n beyond
a threshold. The provable threshold is ceil((c-1)*b_{k-1}/(b_k-b_{k-1}))*b_k;
the exact one is found by a downward scan and is usually much smaller.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import ceil

from . import semigroup
from .coins import Count, CoinSystem, NON_REPRESENTABLE, count_table, is_orderly


@dataclass(frozen=True)
class OptTable:
    """Immutable dense table of optimal counts for amounts 0..limit."""

    system: CoinSystem
    limit: int
    values: tuple[Count, ...]

    def count(self, amount: int) -> Count:
        return self.values[amount]

    def is_representable(self, amount: int) -> bool:
        return self.values[amount] is not None


def build_table(system: CoinSystem, limit: int) -> OptTable:
    """Table of opt_count values for 0..limit, in O(k * limit)."""
    return OptTable(system=system, limit=limit, values=tuple(count_table(system, limit)))


def residue_view(table: OptTable) -> tuple[tuple[tuple[Count, int], ...], ...]:
    """Rows indexed by residue mod b_k; row i lists (count, amount) pairs for
    amounts i, i + b_k, i + 2*b_k, ... up to the table limit.

    Pure presentation: reassembling the rows gives back the table exactly.
    """
    bk = table.system.largest
    return tuple(
        tuple((table.values[n], n) for n in range(i, table.limit + 1, bk))
        for i in range(min(bk, table.limit + 1))
    )


def render_residue_rows(table: OptTable) -> list[str]:
    """Rows in counting-series token form: `t^w q^n` per entry, `0·q^n` for
    amounts with no representation."""
    lines = []
    for i, row in enumerate(residue_view(table)):
        tokens = [f"t^{w} q^{n}" if w is not None else f"0·q^{n}" for w, n in row]
        lines.append(f"f^{i} = " + " + ".join(tokens))
    return lines


def _window_max(system: CoinSystem) -> tuple[int, bool]:
    """Raw window maximum of opt_count and whether it was forced up to 2.

    Unit-leading: the window is [0, b_k). Otherwise it is the b_k-wide window
    starting at ceil(g(B)/b_k)*b_k, past the system's own Frobenius number, so
    every later window looks the same up to the shift property.
    """
    bk = system.largest
    if system.unit_leading:
        values = count_table(system, bk - 1)
    else:
        _, g_own = semigroup.non_representables(system)
        lo = ceil(g_own / bk) * bk
        values = count_table(system, lo + bk - 1)[lo:]
    raw = max(v for v in values if v is not None)
    if raw <= 1:
        return 2, True
    return raw, False


def c_value(system: CoinSystem) -> int:
    """Window maximum of opt_count, the constant bounding counts per window.

    Never returns 1: windows that max out at a single coin (the consecutive
    run 1,2,...,k) are forced to 2, which keeps every downstream bound valid
    while dropping the h constraint.
    """
    if system.k < 2:
        raise ValueError("window constants need at least two denominations")
    c, _ = _window_max(system)
    return c


@dataclass(frozen=True)
class StabilityProfile:
    """Constants of a coin system's eventual arithmetic behaviour.

    exact_threshold is the least T such that opt_count(n + b_k) =
    opt_count(n) + 1 for every n >= T; paper_threshold is the provable bound
    it was refined down from. Orderly systems always get exact_threshold 0.
    """

    system: CoinSystem
    c: int
    u: int
    paper_threshold: int
    exact_threshold: int
    orderly: bool
    counterexample: int | None
    forced_c2: bool


def profile(system: CoinSystem) -> StabilityProfile:
    """Compute the full stability profile.

    The exact threshold is certified on [exact_threshold, paper_threshold +
    2*b_k]: the shift property holds everywhere in that span and fails at
    exact_threshold - 1 whenever the threshold is positive. The table built
    here is also checked against the count bounds ceil(n/b_k) <= count <=
    floor(n/b_k) + c for representable n.
    """
    if system.k < 2:
        raise ValueError("stability profile needs at least two denominations")
    bk, bk1 = system.largest, system.denoms[-2]
    c, forced = _window_max(system)
    stretch = ceil((c - 1) * bk1 / (bk - bk1))
    u = max(c - 1, stretch)
    paper_threshold = stretch * bk

    if system.unit_leading:
        verdict = is_orderly(system)
        orderly, witness = verdict.orderly, verdict.counterexample
    else:
        orderly, witness = False, None

    span_hi = paper_threshold + 2 * bk
    values = count_table(system, span_hi + bk)
    for n, v in enumerate(values):
        if v is not None and not (ceil(n / bk) <= v <= n // bk + c):
            raise ArithmeticError(f"count bound violated at {n} for {system}: {v}")

    last_bad = -1
    for r in range(span_hi + 1):
        v, shifted = values[r], values[r + bk]
        if v is None or shifted != v + 1:
            last_bad = r
    exact_threshold = last_bad + 1
    if exact_threshold > paper_threshold:
        raise ArithmeticError(
            f"shift property fails at {last_bad}, above the provable threshold {paper_threshold}"
        )
    if orderly and exact_threshold != 0:
        raise ArithmeticError(f"orderly system {system} has nonzero shift threshold {exact_threshold}")

    return StabilityProfile(
        system=system,
        c=c,
        u=u,
        paper_threshold=paper_threshold,
        exact_threshold=exact_threshold,
        orderly=orderly,
        counterexample=witness,
        forced_c2=forced,
    )


# ---------------------------------------------------------------------------
# structured documents


def profile_document(prof: StabilityProfile) -> str:
    doc = {
        "type": "stability-profile",
        "denoms": list(prof.system.denoms),
        "c": prof.c,
        "u": prof.u,
        "paper_threshold": prof.paper_threshold,
        "exact_threshold": prof.exact_threshold,
        "orderly": prof.orderly,
        "counterexample": prof.counterexample,
        "forced_c2": prof.forced_c2,
    }
    return json.dumps(doc, indent=2)


def parse_profile_document(text: str) -> StabilityProfile:
    doc = json.loads(text)
    if doc.get("type") != "stability-profile":
        raise ValueError("not a stability-profile document")
    return StabilityProfile(
        system=CoinSystem(tuple(doc["denoms"])),
        c=doc["c"],
        u=doc["u"],
        paper_threshold=doc["paper_threshold"],
        exact_threshold=doc["exact_threshold"],
        orderly=doc["orderly"],
        counterexample=doc["counterexample"],
        forced_c2=doc["forced_c2"],
    )


def table_document(table: OptTable) -> str:
    doc = {
        "type": "opt-table",
        "denoms": list(table.system.denoms),
        "limit": table.limit,
        "values": list(table.values),
    }
    return json.dumps(doc, indent=2)


def parse_table_document(text: str) -> OptTable:
    doc = json.loads(text)
    if doc.get("type") != "opt-table":
        raise ValueError("not an opt-table document")
    values = tuple(NON_REPRESENTABLE if v is None else v for v in doc["values"])
    return OptTable(system=CoinSystem(tuple(doc["denoms"])), limit=doc["limit"], values=values)
