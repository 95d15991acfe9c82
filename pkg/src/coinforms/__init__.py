"""coinforms: piecewise Frobenius formulas for shifted coin systems.

Given denominations B = (b_1 < ... < b_k) and the shifted generators
A(a) = (a, h*a + d*b_1, ..., h*a + d*b_k), the Frobenius number g(A(a)) is,
for large a, a separate quadratic in a on each residue class mod b_k. This
package computes optimal change-making tables, detects when counts become
eventually arithmetic, synthesizes the piecewise formula, and certifies every
synthesized result against definition-level brute-force oracles.
"""

from .coins import (
    NON_REPRESENTABLE,
    CoinSystem,
    Count,
    OrderlyVerdict,
    greedy_count,
    is_orderly,
    opt_count,
)
from .families import (
    FAMILY_IDS,
    CrossCheckReport,
    FamilyFormula,
    cross_check,
    family_eval,
    make_family,
)
from .semigroup import (
    AperySet,
    Instance,
    apery,
    frobenius_oracle,
    n_dr,
    non_representables,
)
from .stability import (
    OptTable,
    StabilityProfile,
    build_table,
    c_value,
    profile,
    residue_view,
)
from .synth import (
    CertificationError,
    CertifyReport,
    CongruenceFormula,
    FormulaEntry,
    certify,
    evaluate,
    synthesize,
    synthesize_general,
)

__version__ = "0.1.0"

__all__ = [
    "AperySet",
    "CertificationError",
    "CertifyReport",
    "CoinSystem",
    "CongruenceFormula",
    "Count",
    "CrossCheckReport",
    "FAMILY_IDS",
    "FamilyFormula",
    "FormulaEntry",
    "Instance",
    "NON_REPRESENTABLE",
    "OptTable",
    "OrderlyVerdict",
    "StabilityProfile",
    "apery",
    "build_table",
    "c_value",
    "certify",
    "cross_check",
    "evaluate",
    "family_eval",
    "frobenius_oracle",
    "greedy_count",
    "is_orderly",
    "make_family",
    "n_dr",
    "non_representables",
    "opt_count",
    "profile",
    "residue_view",
    "synthesize",
    "synthesize_general",
]
