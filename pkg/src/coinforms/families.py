"""Closed-form evaluators for the parametric families with known piecewise
formulas, plus reference tables for three worked base systems.

These are written out literally from the published piecewise statements, not
derived through the synthesis window, so they form an independent route:
family value, synthesized value and definition-level oracle can be compared
three ways on any grid.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil, gcd

from . import synth
from .coins import CoinSystem
from .semigroup import Instance, frobenius_oracle

FAMILY_IDS = (
    "SELMER_1K",       # (1, 2, ..., k)
    "F_12B_B1",        # (1, 2, b, b+1)
    "F_12B_B1_2B",     # (1, 2, b, b+1, 2b)
    "F_1B_2BM1",       # (1, b, 2b-1)
    "F_12K_K",         # (1, 2, ..., k, K)
    "F_4_8_15_17",     # (4, 8, 15, 17)
    "REF_1_11_14",
    "REF_1_4_11_17",
    "REF_1_5_9",
)

_REF_TABLES = {
    "REF_1_11_14": (
        (1, 11, 14),
        42,
        (43, 43, 43, 43, 44, 44, 44, 44, 44, 44, 44, 44, 44, 44),
        (587, 587, 589, 590, 591, 592, 592, 594, 595, 595, 597, 598, 598, 600),
    ),
    "REF_1_4_11_17": (
        (1, 4, 11, 17),
        9,
        (11, 11, 11, 11, 11, 11, 11, 11, 12, 12, 12, 12, 12, 12, 12, 12, 12),
        (150, 150, 150, 155, 156, 156, 156, 159, 160, 160, 160, 160, 160, 160, 166, 167, 167),
    ),
    "REF_1_5_9": (
        (1, 5, 9),
        3,
        (6, 6, 6, 6, 6, 7, 7, 7, 7),
        (26, 26, 26, 26, 30, 31, 31, 31, 31),
    ),
}

_GAMMA_4_8_15_17 = (2, 3, 2, 3, 2, 3, 2, 3, 2, 3, 3, 3, 3, 3, 3, 3, 3)


@dataclass(frozen=True)
class FamilyFormula:
    family_id: str
    system: CoinSystem
    modulus: int
    b: int | None = None
    k: int | None = None
    K: int | None = None
    s: int | None = None  # for F_12K_K: K = s*k + t with 0 <= t < k
    t: int | None = None


def make_family(family_id: str, b: int | None = None, k: int | None = None, K: int | None = None) -> FamilyFormula:
    """Construct a family instance, checking the parameter hypotheses."""
    if family_id == "SELMER_1K":
        if k is None or k < 2:
            raise ValueError("SELMER_1K requires k >= 2")
        return FamilyFormula("SELMER_1K", CoinSystem(tuple(range(1, k + 1))), modulus=k, k=k)
    if family_id == "F_12B_B1":
        if b is None or b < 4:
            raise ValueError("F_12B_B1 requires b >= 4")
        return FamilyFormula("F_12B_B1", CoinSystem.of(1, 2, b, b + 1), modulus=b + 1, b=b)
    if family_id == "F_12B_B1_2B":
        if b is None or b < 4:
            raise ValueError("F_12B_B1_2B requires b >= 4")
        return FamilyFormula("F_12B_B1_2B", CoinSystem.of(1, 2, b, b + 1, 2 * b), modulus=2 * b, b=b)
    if family_id == "F_1B_2BM1":
        if b is None or b < 3:
            raise ValueError("F_1B_2BM1 requires b >= 3")
        return FamilyFormula("F_1B_2BM1", CoinSystem.of(1, b, 2 * b - 1), modulus=2 * b - 1, b=b)
    if family_id == "F_12K_K":
        if k is None or K is None or not (K - 1 > k >= 2):
            raise ValueError("F_12K_K requires K - 1 > k >= 2")
        s, t = divmod(K, k)
        return FamilyFormula(
            "F_12K_K", CoinSystem(tuple(range(1, k + 1)) + (K,)), modulus=K, k=k, K=K, s=s, t=t
        )
    if family_id == "F_4_8_15_17":
        return FamilyFormula("F_4_8_15_17", CoinSystem.of(4, 8, 15, 17), modulus=17)
    if family_id in _REF_TABLES:
        denoms, _, _, _ = _REF_TABLES[family_id]
        return FamilyFormula(family_id, CoinSystem(denoms), modulus=denoms[-1])
    raise ValueError(f"unknown family id: {family_id}")


def family_a_min(family: FamilyFormula) -> int:
    """The a bound stated by the family's hypothesis."""
    fid, b = family.family_id, family.b
    if fid == "SELMER_1K":
        return 2
    if fid == "F_12B_B1":
        return (b - 3) * (b + 1) ** 2 // 2 if b % 2 else (b - 2) * (b + 1) ** 2 // 2
    if fid == "F_12B_B1_2B":
        return b * (b - 2) if b % 2 == 0 else b * (b - 1)
    if fid == "F_1B_2BM1":
        return 2 * b * b - 5 * b + 2
    if fid == "F_12K_K":
        return family.s * family.K if family.t >= 2 else (family.s - 1) * family.K
    if fid == "F_4_8_15_17":
        return 90
    return {"REF_1_11_14": 588, "REF_1_4_11_17": 153, "REF_1_5_9": 27}[fid]


def family_h_min(family: FamilyFormula, d: int) -> int:
    """The h bound stated by the family's hypothesis, for a given d."""
    fid, b = family.family_id, family.b
    if fid == "SELMER_1K":
        return 1
    if fid == "F_12B_B1":
        return ceil(2 * d / ((b - 3) * (b + 1))) if b % 2 else ceil(2 * d / ((b - 2) * (b + 1)))
    if fid == "F_12B_B1_2B":
        return ceil(2 * d / (b - 2)) if b % 2 == 0 else ceil(2 * d / (b - 1))
    if fid == "F_1B_2BM1":
        return ceil(d / (b - 2))
    if fid == "F_12K_K":
        return ceil(d / family.s) if family.t >= 2 else ceil(d / (family.s - 1))
    if fid == "F_4_8_15_17":
        return ceil(17 * d / 90)
    return {"REF_1_11_14": ceil(d / 42), "REF_1_4_11_17": ceil(d / 9), "REF_1_5_9": ceil(d / 3)}[fid]


def domain_violation(family: FamilyFormula, a: int, h: int, d: int) -> str | None:
    """Name of the first violated hypothesis for (a, h, d), or None if all hold."""
    if h < 1 or d < 1 or a < 1:
        return "a, h, d must be positive"
    if a < family_a_min(family):
        return f"a lower bound: a >= {family_a_min(family)}"
    if gcd(a, d) != 1:
        return f"coprimality: gcd(a, d) = gcd({a}, {d}) != 1"
    if h < family_h_min(family, d):
        return f"h constraint: h >= {family_h_min(family, d)} for d={d}"
    return None


def _cap_body_high_t(K: int, k: int, s: int, a: int, h: int, d: int) -> int:
    """Piecewise body of the (1,...,k,K) formula used when K = s*k + t, t >= 2."""
    j = a % K
    fl = a // K
    if j <= (s - 1) * k + 1:
        return (fl + s) * h * a + K * d * fl - a - d
    if j <= s * k + 1:
        return (fl + s) * h * a + K * d * fl - a + (j - 1) * d
    return (fl + s + 1) * h * a + K * d * fl - a + (j - 1) * d


def _cap_body_low_t(K: int, k: int, s: int, a: int, h: int, d: int) -> int:
    """Piecewise body of the (1,...,k,K) formula used when t is 0 or 1."""
    j = a % K
    fl = a // K
    if j <= (s - 2) * k + 1:
        return (fl + s - 1) * h * a + K * d * fl - a - d
    if j <= (s - 1) * k + 1:
        return (fl + s - 1) * h * a + K * d * fl - a + (j - 1) * d
    return (fl + s) * h * a + K * d * fl - a + (j - 1) * d


def _family_value(family: FamilyFormula, a: int, h: int, d: int) -> int:
    fid, b = family.family_id, family.b
    if fid == "SELMER_1K":
        return h * a * ((a - 2) // family.k + 1) + (d - 1) * (a - 1) - 1
    if fid == "F_12B_B1":
        j = a % (b + 1)
        base = (a // (b + 1)) * (h * a + (b + 1) * d) + (j - 1) * d
        return base - a if j <= 1 else base + (h - 1) * a
    if fid == "F_12B_B1_2B":
        j = a % (2 * b)
        fl = a // (2 * b)
        if b % 2 == 0:
            if j <= b - 3:
                return (fl + b // 2 - 1) * h * a + 2 * b * d * fl - a - d
            if j == b - 2:
                return (fl + b // 2 - 1) * h * a + 2 * b * d * fl - a + b * d - 3 * d
            if j == b - 1:
                return (fl + b // 2 - 1) * h * a + 2 * b * d * fl - a + b * d - 2 * d
            if j <= 2 * b - 2:
                return (fl + b // 2) * h * a + 2 * b * d * fl - a + b * d - d
            return (fl + b // 2) * h * a + 2 * b * d * fl - a + 2 * b * d - 2 * d
        if j <= b - 2:
            return (fl + (b - 1) // 2) * h * a + 2 * b * d * fl - a - d
        if j == b - 1:
            return (fl + (b - 1) // 2) * h * a + 2 * b * d * fl - a + b * d - 2 * d
        if j <= 2 * b - 3:
            return (fl + (b - 1) // 2) * h * a + 2 * b * d * fl - a + b * d - d
        if j == 2 * b - 2:
            return (fl + (b - 1) // 2) * h * a + 2 * b * d * fl - a + 2 * b * d - 3 * d
        return (fl + (b - 1) // 2) * h * a + 2 * b * d * fl - a + 2 * b * d - 2 * d
    if fid == "F_1B_2BM1":
        m = 2 * b - 1
        j = a % m
        fl = a // m
        if j <= b - 2:
            return (fl + b - 2) * h * a + m * d * fl - a - d
        if j == b - 1:
            return (fl + b - 2) * h * a + m * d * fl - a + (b - 2) * d
        return (fl + b - 1) * h * a + m * d * fl - a + (b - 1) * d
    if fid == "F_12K_K":
        body = _cap_body_high_t if family.t >= 2 else _cap_body_low_t
        return body(family.K, family.k, family.s, a, h, d)
    if fid == "F_4_8_15_17":
        j = a % 17
        return (_GAMMA_4_8_15_17[j] * h - 1) * a + (26 + j) * d + (h * a + 17 * d) * (a // 17)
    denoms, offset, weights, remainders = _REF_TABLES[fid]
    bk = denoms[-1]
    j = a % bk
    return (weights[j] * h - 1) * a + remainders[j] * d + (h * a + bk * d) * (a // bk - offset)


def family_eval(family: FamilyFormula, a: int, h: int, d: int) -> int:
    """The family's piecewise value at (a, h, d); rejects out-of-domain points
    with the violated hypothesis named."""
    violation = domain_violation(family, a, h, d)
    if violation is not None:
        raise ValueError(f"{family.family_id}: {violation}")
    return _family_value(family, a, h, d)


def default_grid(family: FamilyFormula, d_values: tuple[int, ...] = (1, 2), periods: int = 2) -> list[tuple[int, int, int]]:
    """Grid over the first ``periods`` residue periods above the family's a
    bound, at the minimal h for each d; out-of-domain points are dropped."""
    lo = max(family_a_min(family), 2)
    points = []
    for d in d_values:
        h = family_h_min(family, d)
        for a in range(lo, lo + periods * family.modulus):
            if domain_violation(family, a, h, d) is None:
                points.append((a, h, d))
    return points


@dataclass(frozen=True)
class Mismatch:
    a: int
    h: int
    d: int
    family_value: int
    oracle_value: int
    synth_value: int | None


@dataclass(frozen=True)
class CrossCheckReport:
    family_id: str
    checked: int
    skipped: int
    mismatches: tuple[Mismatch, ...]

    @property
    def clean(self) -> bool:
        return not self.mismatches


def cross_check(family: FamilyFormula, grid) -> CrossCheckReport:
    """Compare the family value with the oracle on every in-domain grid point,
    and with the synthesized formula wherever one applies (unit-leading system,
    point inside the synthesized validity region). Mismatches are report
    content, in ascending point order; they are not exceptions.
    """
    synthesized = None
    if family.system.unit_leading and family.system.k >= 2:
        synthesized = synth.synthesize(family.system)
    checked = skipped = 0
    mismatches = []
    for a, h, d in sorted(grid):
        if domain_violation(family, a, h, d) is not None:
            skipped += 1
            continue
        checked += 1
        fam = _family_value(family, a, h, d)
        oracle = frobenius_oracle(Instance(a, h, d, family.system))
        s_val = None
        if (
            synthesized is not None
            and a >= synthesized.a_min_paper
            and h >= synthesized.h_min(d)
        ):
            s_val = synth.evaluate(synthesized, a, h, d)
        if fam != oracle or (s_val is not None and s_val != fam):
            mismatches.append(Mismatch(a, h, d, fam, oracle, s_val))
    return CrossCheckReport(
        family_id=family.family_id, checked=checked, skipped=skipped, mismatches=tuple(mismatches)
    )
