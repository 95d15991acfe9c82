"""Command line front end: analysis, table dumps, formula synthesis,
Frobenius evaluation, certification scans and family checks.

All numeric flags are explicit; h and d in particular never default, so the
hypotheses behind a formula are always stated by the caller. Exit status is 0
iff nothing failed and no disagreement was detected.
"""

from __future__ import annotations

import argparse
import json
import sys
from math import gcd

from . import families, semigroup, stability, synth
from .coins import CoinSystem
from .synth import CertificationError, CongruenceFormula


def _system(text: str) -> CoinSystem:
    return CoinSystem.parse(text)


def _grouped_entries(entries):
    """Merge consecutive residues whose coefficients continue one pattern:
    same weight with constant remainder, or same weight with the remainder
    stepping along the residue (kept for runs of three or more, so short
    steps still print one row per residue). Presentation only."""
    groups = []
    i, n = 0, len(entries)
    while i < n:
        w, r = entries[i].weight, entries[i].remainder
        const_len = 1
        while i + const_len < n and entries[i + const_len].weight == w and entries[i + const_len].remainder == r:
            const_len += 1
        slide_len = 1
        while (
            i + slide_len < n
            and entries[i + slide_len].weight == w
            and entries[i + slide_len].remainder == r + slide_len
        ):
            slide_len += 1
        if slide_len >= 3 and slide_len > const_len:
            length, mode = slide_len, "slide"
        else:
            length, mode = const_len, "const"
        groups.append(([entries[i + t].residue for t in range(length)], w, r, mode))
        i += length
    return groups


def _h_rule_text(formula: CongruenceFormula) -> str:
    if formula.h_min_rule is None:
        return "no h constraint"
    num, den = formula.h_min_rule
    return f"h >= ceil(d/{den})" if num == 1 else f"h >= ceil({num}d/{den})"


def _piecewise_lines(formula: CongruenceFormula) -> list[str]:
    bk = formula.modulus
    shift = f"(ha+{bk}d)(floor(a/{bk}) - {formula.offset})" if formula.offset else f"(ha+{bk}d)floor(a/{bk})"
    lines = [
        f"system {formula.system}  modulus {bk}  offset {formula.offset}  path {formula.path}",
        f"valid for a >= {formula.a_min_paper}, gcd(a, d) = 1, {_h_rule_text(formula)}"
        + (f"  [certified from a >= {formula.a_min_empirical}]" if formula.certified else ""),
    ]
    for js, w, r0, mode in _grouped_entries(formula.entries):
        rd = f"{r0}d" if mode == "const" else f"({r0 - js[0]}+j)d"
        cond = "a ≡ " + ",".join(str(j) for j in js) + f" (mod {bk})"
        lines.append(f"  g = ({w}h-1)a + {rd} + {shift}   if {cond}")
    return lines


def _print(lines) -> None:
    for line in lines:
        print(line)


def _cmd_analyze(args) -> int:
    prof = stability.profile(_system(args.denoms))
    if args.output == "structured":
        print(stability.profile_document(prof))
        return 0
    lines = [
        f"system: {prof.system}",
        f"c: {prof.c}",
        f"u: {prof.u}",
        f"paper_threshold: {prof.paper_threshold}",
        f"exact_threshold: {prof.exact_threshold}",
        f"orderly: {str(prof.orderly).lower()}",
    ]
    if prof.counterexample is not None:
        verdict = stability.is_orderly(prof.system)
        lines.append(
            f"counterexample: {prof.counterexample} (optimal {verdict.optimal} < greedy {verdict.greedy})"
        )
    lines.append(f"forced_c2: {str(prof.forced_c2).lower()}")
    _print(lines)
    return 0


def _cmd_table(args) -> int:
    table = stability.build_table(_system(args.denoms), args.limit)
    if args.output == "structured":
        print(stability.table_document(table))
        return 0
    if args.by_residue:
        for i, row in enumerate(stability.residue_view(table)):
            cells = " ".join(f"{n}:{'NR' if w is None else w}" for w, n in row)
            print(f"f^{i}: {cells}")
    else:
        for n, w in enumerate(table.values):
            print(f"{n} {'NR' if w is None else w}")
    return 0


def _cmd_ftq(args) -> int:
    table = stability.build_table(_system(args.denoms), args.limit)
    _print(stability.render_residue_rows(table))
    return 0


def _synthesize_for(system: CoinSystem, span: int) -> CongruenceFormula:
    if system.unit_leading:
        return synth.synthesize(system)
    return synth.synthesize_general(system, verify_span=span)


def _cmd_formula(args) -> int:
    formula = _synthesize_for(_system(args.denoms), args.span)
    if args.output == "structured":
        print(synth.formula_document(formula))
    else:
        _print(_piecewise_lines(formula))
    return 0


def _cmd_frobenius(args) -> int:
    system = _system(args.denoms)
    inst = semigroup.Instance(args.a, args.h, args.d, system)
    oracle = semigroup.frobenius_oracle(inst)
    formula_value = None
    if system.unit_leading and system.k >= 2:
        formula = synth.synthesize(system)
        applicable = (
            args.a >= formula.a_min_paper
            and gcd(args.a, args.d) == 1
            and args.h >= formula.h_min(args.d)
        )
        if applicable:
            formula_value = synth.evaluate(formula, args.a, args.h, args.d)
    agreement = None if formula_value is None else formula_value == oracle
    if args.output == "structured":
        doc = {
            "type": "frobenius-result",
            "denoms": list(system.denoms),
            "a": args.a,
            "h": args.h,
            "d": args.d,
            "oracle": oracle,
            "formula": formula_value,
            "agreement": agreement,
        }
        print(json.dumps(doc, indent=2))
    else:
        print(f"g = {oracle}")
        print(f"sources: {'oracle,formula' if formula_value is not None else 'oracle'}")
        if agreement is not None:
            print(f"agreement: {str(agreement).lower()}")
    return 1 if agreement is False else 0


def _cmd_certify(args) -> int:
    system = _system(args.denoms)
    formula = synth.synthesize(system) if system.unit_leading else synth.synthesize_general(system, verify_span=0)
    report = synth.certify(formula, args.h, args.d, args.a_hi)
    if args.output == "structured":
        print(synth.report_document(report))
    else:
        print(f"a_min_empirical: {report.a_min_empirical}")
        print("exceptional: " + (",".join(map(str, report.exceptional)) or "none"))
    return 0


def _cmd_family(args) -> int:
    family = families.make_family(args.family, b=args.b, k=args.k, K=args.K)
    if args.check:
        grid = families.default_grid(family, periods=args.periods)
        report = families.cross_check(family, grid)
        if args.output == "structured":
            doc = {
                "type": "cross-check-report",
                "family": report.family_id,
                "checked": report.checked,
                "skipped": report.skipped,
                "mismatches": [
                    {"a": m.a, "h": m.h, "d": m.d, "family": m.family_value,
                     "oracle": m.oracle_value, "synth": m.synth_value}
                    for m in report.mismatches
                ],
            }
            print(json.dumps(doc, indent=2))
        else:
            print(f"checked: {report.checked}")
            print(f"skipped: {report.skipped}")
            print(f"mismatches: {len(report.mismatches)}")
            for m in report.mismatches:
                print(f"  a={m.a} h={m.h} d={m.d}: family {m.family_value}, oracle {m.oracle_value}")
        return 0 if report.clean else 1
    if args.a is None or args.h is None or args.d is None:
        raise ValueError("family evaluation needs --a, --h and --d (or pass --check)")
    value = families.family_eval(family, args.a, args.h, args.d)
    if args.output == "structured":
        doc = {
            "type": "family-value",
            "family": family.family_id,
            "a": args.a,
            "h": args.h,
            "d": args.d,
            "value": value,
        }
        print(json.dumps(doc, indent=2))
    else:
        print(f"g = {value}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coinforms",
        description="Piecewise Frobenius formulas from change-making tables, with oracle certification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def denoms_arg(p):
        p.add_argument("denoms", help="comma-separated denominations, e.g. 1,11,14")

    def output_arg(p):
        p.add_argument("--output", choices=("text", "structured"), default="text")

    p = sub.add_parser("analyze", help="stability profile and orderliness")
    denoms_arg(p); output_arg(p)
    p.set_defaults(handler=_cmd_analyze)

    p = sub.add_parser("table", help="optimal-count table")
    denoms_arg(p); output_arg(p)
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--by-residue", action="store_true")
    p.set_defaults(handler=_cmd_table)

    p = sub.add_parser("ftq", help="residue-decomposed table in t/q token form")
    denoms_arg(p)
    p.add_argument("--limit", type=int, required=True)
    p.set_defaults(handler=_cmd_ftq)

    p = sub.add_parser("formula", help="synthesize the piecewise formula")
    denoms_arg(p); output_arg(p)
    p.add_argument("--span", type=int, default=4, help="certification span for systems without a unit coin")
    p.set_defaults(handler=_cmd_formula)

    p = sub.add_parser("frobenius", help="Frobenius number of (a, ha+d*b_1, ..., ha+d*b_k)")
    denoms_arg(p); output_arg(p)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(handler=_cmd_frobenius)

    p = sub.add_parser("certify", help="scan the formula against the oracle")
    denoms_arg(p); output_arg(p)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--a-hi", type=int, required=True)
    p.set_defaults(handler=_cmd_certify)

    p = sub.add_parser("family", help="evaluate or cross-check a family formula")
    output_arg(p)
    p.add_argument("--family", required=True, choices=families.FAMILY_IDS)
    p.add_argument("--b", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--K", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--h", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--check", action="store_true")
    p.add_argument("--periods", type=int, default=2)
    p.set_defaults(handler=_cmd_family)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except (ValueError, ArithmeticError, CertificationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
