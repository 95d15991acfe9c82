"""Synthesis of piecewise Frobenius formulas.

For a unit-leading system B and the shifted generators (a, h*a + d*b_1, ...,
h*a + d*b_k), the Frobenius number becomes, for a large enough, a separate
affine-in-(a, h, d) expression on each residue class of a mod b_k:

    g = (w_j*h - 1)*a + r_j*d + (h*a + b_k*d) * (floor(a/b_k) - offset)

where j = a mod b_k. The coefficient pairs (w_j, r_j) are read off one
length-b_k window of the optimal-count table; offset is c-1 for orderly
systems and u+c-1 otherwise. Everything synthesized here can be certified
against the definition-level oracle, which is the sole authority for the
experimental path handling systems without a unit coin.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from math import ceil, gcd

from . import semigroup, stability
from .coins import CoinSystem, count_table
from .semigroup import Instance, frobenius_oracle


@dataclass(frozen=True)
class FormulaEntry:
    """Coefficients for one residue class: weight w_j and remainder r_j."""

    residue: int
    weight: int
    remainder: int


@dataclass(frozen=True)
class CongruenceFormula:
    """A synthesized piecewise formula, one entry per residue class mod b_k.

    h_min_rule is (num, den) meaning the formula requires h >= ceil(num*d/den);
    None means no constraint ties h to d. a_min_paper is the validity bound the
    synthesis guarantees; a_min_empirical, when set by certification, is the
    observed true threshold (certification also records the isolated smaller
    values where the formula happens to agree with the oracle).
    """

    system: CoinSystem
    modulus: int
    offset: int
    path: str  # "orderly" | "general_unit" | "general_b1"
    h_min_rule: tuple[int, int] | None
    a_min_paper: int
    entries: tuple[FormulaEntry, ...]
    a_min_empirical: int | None = None
    exceptional: tuple[int, ...] | None = None

    def h_min(self, d: int) -> int:
        if self.h_min_rule is None:
            return 1
        num, den = self.h_min_rule
        return ceil(num * d / den)

    @property
    def certified(self) -> bool:
        return self.a_min_empirical is not None

    @property
    def weights(self) -> tuple[int, ...]:
        return tuple(e.weight for e in self.entries)

    @property
    def remainders(self) -> tuple[int, ...]:
        return tuple(e.remainder for e in self.entries)


class CertificationError(RuntimeError):
    """A synthesized formula disagreed with the oracle inside its claimed range."""

    def __init__(self, witness: int, formula_value: int, oracle_value: int):
        self.witness = witness
        self.formula_value = formula_value
        self.oracle_value = oracle_value
        super().__init__(
            f"formula fails at a={witness}: formula {formula_value}, oracle {oracle_value}"
        )


def _formula_value(formula: CongruenceFormula, a: int, h: int, d: int) -> int:
    entry = formula.entries[a % formula.modulus]
    return (
        (entry.weight * h - 1) * a
        + entry.remainder * d
        + (h * a + formula.modulus * d) * (a // formula.modulus - formula.offset)
    )


def synthesize(system: CoinSystem) -> CongruenceFormula:
    """Read the coefficient pairs off the optimal-count table.

    For each residue j, with a* = offset*b_k + j, the window [a* - b_k, a* - 1]
    is scanned and r_j is the largest amount attaining the window's maximal
    count (lexicographic max on (count, amount)); w_j is that count. The h
    constraint h >= ceil(d/offset) makes the count coefficient dominate inside
    the window, so the choice is independent of h and d. The structural facts
    that both coefficient sequences are nondecreasing with total weight spread
    at most 1 are verified before returning.
    """
    if not system.unit_leading:
        raise ValueError("system has no unit coin, use synthesize_general")
    if system.k < 2:
        raise ValueError("synthesis needs at least two denominations")
    prof = stability.profile(system)
    offset = (prof.c - 1) if prof.orderly else (prof.u + prof.c - 1)
    bk = system.largest
    table = count_table(system, (offset + 1) * bk)

    entries = []
    for j in range(bk):
        a_star = offset * bk + j
        best_r = a_star - bk
        for r in range(a_star - bk, a_star):
            if table[r] >= table[best_r]:
                best_r = r
        entries.append(FormulaEntry(residue=j, weight=table[best_r], remainder=best_r))

    weights = [e.weight for e in entries]
    remainders = [e.remainder for e in entries]
    if weights != sorted(weights) or remainders != sorted(remainders):
        raise ArithmeticError(f"coefficient sequences not monotone for {system}")
    if weights[-1] - weights[0] > 1:
        raise ArithmeticError(f"weight spread exceeds 1 for {system}")
    if not all((offset - 1) * bk <= r < (offset + 1) * bk for r in remainders):
        raise ArithmeticError(f"remainders escape the synthesis window for {system}")

    return CongruenceFormula(
        system=system,
        modulus=bk,
        offset=offset,
        path="orderly" if prof.orderly else "general_unit",
        h_min_rule=None if prof.forced_c2 else (1, offset),
        a_min_paper=offset * bk,
        entries=tuple(entries),
    )


def _general_entries(system: CoinSystem, base: int, g_own: int) -> tuple[FormulaEntry, ...]:
    """Window decisions for a system without a unit coin, taken at floor
    multiplier ``base``: per residue j the candidates are (count(r), r) for
    representable r < a* and (count(a* + r), a* + r) for the finitely many
    non-representable r, normalized back by the base."""
    bk = system.largest
    table = count_table(system, base * bk + bk - 1 + g_own)
    entries = []
    for j in range(bk):
        a_star = base * bk + j
        best: tuple[int, int] | None = None
        for r in range(a_star):
            count = table[r]
            if count is None:
                key = (table[a_star + r], a_star + r)
            else:
                key = (count, r)
            if best is None or key > best:
                best = key
        weight, rho = best
        if weight - base < 0 or rho - base * bk < 0:
            raise ArithmeticError(f"window decision at base {base} cannot be normalized for {system}")
        entries.append(FormulaEntry(residue=j, weight=weight - base, remainder=rho - base * bk))
    return tuple(entries)


def synthesize_general(system: CoinSystem, verify_span: int = 4) -> CongruenceFormula:
    """Experimental path for systems whose smallest denomination exceeds 1.

    The same congruence-class shape holds with offset 0 and the floor term
    (h*a + b_k*d) * floor(a/b_k), but the window reasoning is heuristic here,
    so the result is trusted only as far as the oracle confirms it. The base
    multiplier starts past the shift threshold and is raised until the window
    decisions stop moving; the induced formula is then checked against the
    oracle for verify_span consecutive values of a per residue (any mismatch
    raises CertificationError), and refined downward to the least a from which
    it always matches. verify_span=0 skips certification and returns the
    formula with the certified flag unset.
    """
    if system.unit_leading:
        raise ValueError("system has a unit coin, use synthesize")
    if verify_span < 0:
        raise ValueError("verify_span must be nonnegative")
    prof = stability.profile(system)
    _, g_own = semigroup.non_representables(system)
    bk = system.largest

    base = max(ceil((prof.exact_threshold + bk) / bk), ceil((g_own + 1) / bk), 1)
    entries = _general_entries(system, base, g_own)
    for _ in range(64):
        at_next = _general_entries(system, base + 1, g_own)
        if at_next == entries:
            break
        base += 1
        entries = at_next
    else:
        raise ArithmeticError(f"window decisions never stabilized for {system}")

    formula = CongruenceFormula(
        system=system,
        modulus=bk,
        offset=0,
        path="general_b1",
        h_min_rule=(bk, base * bk),
        a_min_paper=base * bk,
        entries=entries,
    )
    if verify_span == 0:
        return formula

    h, d = formula.h_min(1), 1
    hi = formula.a_min_paper + bk - 1 + verify_span * bk
    for a in range(formula.a_min_paper, hi + 1):
        value = _formula_value(formula, a, h, d)
        oracle = frobenius_oracle(Instance(a, h, d, system), cross_check=False)
        if value != oracle:
            raise CertificationError(a, value, oracle)

    matches = {}
    for a in range(2, formula.a_min_paper):
        value = _formula_value(formula, a, h, d)
        matches[a] = value == frobenius_oracle(Instance(a, h, d, system), cross_check=False)
    failing = [a for a, ok in matches.items() if not ok]
    a_min = max(failing) + 1 if failing else 2
    exceptional = tuple(a for a in sorted(matches) if a < a_min and matches[a])
    return replace(formula, a_min_empirical=a_min, exceptional=exceptional)


def evaluate(
    formula: CongruenceFormula, a: int, h: int, d: int, allow_empirical: bool = False
) -> int:
    """Value of the formula at (a, h, d), after checking its preconditions.

    The bound defaults to a_min_paper; allow_empirical opts into the certified
    empirical bound when one is recorded. Violations are reported individually.
    """
    if h < 1 or d < 1:
        raise ValueError("h and d must be positive")
    bound = formula.a_min_paper
    if allow_empirical and formula.a_min_empirical is not None:
        bound = formula.a_min_empirical
    if a < bound:
        raise ValueError(f"a={a} is below the validity bound {bound}")
    if gcd(a, d) != 1:
        raise ValueError(f"gcd(a, d) must be 1, got gcd({a}, {d})")
    if h < formula.h_min(d):
        raise ValueError(f"h={h} violates the constraint h >= {formula.h_min(d)} for d={d}")
    return _formula_value(formula, a, h, d)


@dataclass(frozen=True)
class CertifyReport:
    """Outcome of scanning a formula against the oracle over a in [2, a_hi].

    a_min_empirical is the least a from which every later scanned value
    matches; exceptional lists the isolated agreements below it.
    """

    system: CoinSystem
    h: int
    d: int
    a_hi: int
    a_min_empirical: int
    exceptional: tuple[int, ...]


def certify(formula: CongruenceFormula, h: int, d: int, a_hi: int) -> CertifyReport:
    """Compare the formula with the oracle for every a in [2, a_hi] coprime
    to d, evaluating speculatively below the validity bound.

    Instances beyond a=5000 skip the sieve cross-check of the oracle to keep
    long scans tractable; the Apéry computation itself is always exact.
    """
    if h < 1 or d < 1:
        raise ValueError("h and d must be positive")
    if a_hi < formula.a_min_paper:
        raise ValueError(f"a_hi={a_hi} must reach the validity bound {formula.a_min_paper}")
    matches = {}
    for a in range(2, a_hi + 1):
        if gcd(a, d) != 1:
            continue
        oracle = frobenius_oracle(Instance(a, h, d, formula.system), cross_check=False if a > 5000 else None)
        matches[a] = _formula_value(formula, a, h, d) == oracle
    failing = [a for a, ok in matches.items() if not ok]
    a_min = max(failing) + 1 if failing else 2
    exceptional = tuple(a for a in sorted(matches) if a < a_min and matches[a])
    return CertifyReport(
        system=formula.system, h=h, d=d, a_hi=a_hi, a_min_empirical=a_min, exceptional=exceptional
    )


def with_certification(formula: CongruenceFormula, report: CertifyReport) -> CongruenceFormula:
    """Attach a certification outcome to the formula it was computed for."""
    if report.system != formula.system:
        raise ValueError("report belongs to a different system")
    return replace(formula, a_min_empirical=report.a_min_empirical, exceptional=report.exceptional)


# ---------------------------------------------------------------------------
# canonical structured documents


def formula_document(formula: CongruenceFormula) -> str:
    """Canonical serialization; field order fixed, round-trips byte-identically."""
    rule = formula.h_min_rule
    doc = {
        "type": "congruence-formula",
        "denoms": list(formula.system.denoms),
        "modulus": formula.modulus,
        "offset": formula.offset,
        "path": formula.path,
        "h_min_rule": None if rule is None else f"{rule[0]}/{rule[1]}",
        "a_min_paper": formula.a_min_paper,
        "a_min_empirical": formula.a_min_empirical,
        "exceptional": None if formula.exceptional is None else list(formula.exceptional),
        "entries": [{"j": e.residue, "w": e.weight, "r": e.remainder} for e in formula.entries],
    }
    return json.dumps(doc, indent=2)


def parse_formula_document(text: str) -> CongruenceFormula:
    doc = json.loads(text)
    if doc.get("type") != "congruence-formula":
        raise ValueError("not a congruence-formula document")
    rule = doc["h_min_rule"]
    if rule is not None:
        num, den = rule.split("/")
        rule = (int(num), int(den))
    exceptional = doc["exceptional"]
    return CongruenceFormula(
        system=CoinSystem(tuple(doc["denoms"])),
        modulus=doc["modulus"],
        offset=doc["offset"],
        path=doc["path"],
        h_min_rule=rule,
        a_min_paper=doc["a_min_paper"],
        entries=tuple(FormulaEntry(e["j"], e["w"], e["r"]) for e in doc["entries"]),
        a_min_empirical=doc["a_min_empirical"],
        exceptional=None if exceptional is None else tuple(exceptional),
    )


def report_document(report: CertifyReport) -> str:
    doc = {
        "type": "certify-report",
        "denoms": list(report.system.denoms),
        "h": report.h,
        "d": report.d,
        "a_hi": report.a_hi,
        "a_min_empirical": report.a_min_empirical,
        "exceptional": list(report.exceptional),
    }
    return json.dumps(doc, indent=2)


def parse_report_document(text: str) -> CertifyReport:
    doc = json.loads(text)
    if doc.get("type") != "certify-report":
        raise ValueError("not a certify-report document")
    return CertifyReport(
        system=CoinSystem(tuple(doc["denoms"])),
        h=doc["h"],
        d=doc["d"],
        a_hi=doc["a_hi"],
        a_min_empirical=doc["a_min_empirical"],
        exceptional=tuple(doc["exceptional"]),
    )
