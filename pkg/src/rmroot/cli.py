"""Command-line interface: evaluate job files, verify sweeps, tabulate grids.

Exit codes: 0 success, 1 parse/IO error or verification mismatch,
2 validation failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .engine import CaseTag, RootNumberReport, sign_place, sign_global
from .errors import DeskScaleExceeded, RootNumberError, ValidationFailed
from .jobs import JobParseError, load_job
from .numutil import divisors, prime_powers_upto
from .oracle import sweep_abelian, sweep_fq, sweep_gauss, sweep_induced, sweep_sp2
from .places import (
    Good,
    PlaceData,
    PotentiallyGood,
    PotentiallyToric,
    RmVarietyData,
    ToricSubtype,
    ValidationReport,
    validate_place,
)
from .residuefield import PrimePower

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INVALID = 2


def _validation_obj(report: ValidationReport) -> dict:
    return {
        "ok": report.ok,
        "violations": [
            {"code": v.code.value, "place": v.place, "message": v.message}
            for v in report.violations
        ],
        "warnings": [
            {"code": w.code.value, "place": w.place, "message": w.message}
            for w in report.warnings
        ],
    }


def _print_eval_json(report: RootNumberReport, data: RmVarietyData) -> None:
    obj = {
        "dimension": data.dimension,
        "infinite_places": data.infinite_places,
        "places": [
            {"label": ps.label, "case": ps.case_tag.value, "w": ps.w, "w_iota": ps.w_iota}
            for ps in report.per_place
        ],
        "global_w": report.global_w,
        "global_w_iota": report.global_w_iota,
        "validation": _validation_obj(report.validation),
    }
    print(json.dumps(obj, indent=2))


def _print_eval_table(report: RootNumberReport, data: RmVarietyData) -> None:
    rows = [("place", "case", "w_iota", "w")]
    rows += [
        (ps.label, ps.case_tag.value, f"{ps.w_iota:+d}", f"{ps.w:+d}")
        for ps in report.per_place
    ]
    widths = [max(len(row[i]) for row in rows) for i in range(4)]
    for row in rows:
        print("  ".join(cell.ljust(width) for cell, width in zip(row, widths)))
    print(
        f"global w = {report.global_w:+d}  "
        f"(per-embedding w_iota = {report.global_w_iota:+d}, "
        f"infinite places: {data.infinite_places}, g = {data.dimension})"
    )
    for line in report.validation.render_lines():
        print(line)


def cmd_eval(args: argparse.Namespace) -> int:
    try:
        data = load_job(args.job)
    except (JobParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    try:
        report = sign_global(data, allow_p2_multiplicative=args.allow_p2_multiplicative)
    except ValidationFailed as exc:
        if args.format == "json":
            print(json.dumps({"validation": _validation_obj(exc.report)}, indent=2))
        else:
            for line in exc.report.render_lines():
                print(line)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except RootNumberError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.format == "json":
        _print_eval_json(report, data)
    else:
        _print_eval_table(report, data)
    return EXIT_OK


_SUITES = {
    "abelian": lambda args: sweep_abelian(pmax=args.pmax, seed=args.seed),
    "induced": lambda args: sweep_induced(qmax=args.qmax),
    "fq": lambda args: sweep_fq(qmax=args.qmax),
    "sp2": lambda args: sweep_sp2(qmax=args.qmax),
    "gauss": lambda args: sweep_gauss(qmax=args.qmax),
}

_SUITE_DEFAULT_BOUNDS = {"abelian": 13, "induced": 13, "fq": 13, "sp2": 100, "gauss": 121}


def cmd_verify(args: argparse.Namespace) -> int:
    if args.qmax is None:
        args.qmax = _SUITE_DEFAULT_BOUNDS[args.suite]
    if args.pmax is None:
        args.pmax = _SUITE_DEFAULT_BOUNDS[args.suite]
    try:
        result = _SUITES[args.suite](args)
    except DeskScaleExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    print(f"suite={result.suite} checked={result.checked} mismatches={len(result.mismatches)}")
    for mismatch in result.mismatches:
        print(f"MISMATCH {json.dumps(mismatch, default=str, sort_keys=True)}")
    return EXIT_OK if result.ok else EXIT_ERROR


_SWEEP_CASES = ("abelian", "induced", "split", "nonsplit", "additive", "good")

_TORIC_FOR_CASE = {
    "split": ToricSubtype.SPLIT,
    "nonsplit": ToricSubtype.NONSPLIT,
    "additive": ToricSubtype.ADDITIVE,
}


def _sweep_reductions(case: str, q: int, g: int, r: int, conductor: int | None, es):
    """Admissible (e, r, reduction) rows for one q; inadmissible e are skipped."""
    if case in _TORIC_FOR_CASE:
        yield None, None, PotentiallyToric(_TORIC_FOR_CASE[case])
        return
    if case == "good":
        yield None, None, Good()
        return
    base = divisors(q - 1 if case == "abelian" else q + 1)
    for e in es if es is not None else base:
        if case == "abelian":
            red = PotentiallyGood(e=e, r=r, galois_abelian=True, inertia_abelian=True)
        else:
            a = conductor if conductor is not None else 2 * g
            red = PotentiallyGood(
                e=e, r=r, galois_abelian=False, inertia_abelian=True, artin_conductor=a
            )
        yield e, r, red


def cmd_sweep(args: argparse.Namespace) -> int:
    g = args.dimension
    if g < 1:
        print("error: dimension must be positive", file=sys.stderr)
        return EXIT_ERROR
    if args.q:
        try:
            qs = sorted({int(part) for part in args.q.split(",")})
        except ValueError:
            print(f"error: bad q list {args.q!r}", file=sys.stderr)
            return EXIT_ERROR
    else:
        qs = [q for _, _, q in prime_powers_upto(args.qmax, odd_only=True)]
    es = None
    if args.e:
        try:
            es = sorted({int(part) for part in args.e.split(",")})
        except ValueError:
            print(f"error: bad e list {args.e!r}", file=sys.stderr)
            return EXIT_ERROR
    rows = []
    for q in qs:
        pf = _as_prime_power(q)
        if pf is None:
            print(f"error: q={q} is not a prime power", file=sys.stderr)
            return EXIT_ERROR
        pp = PrimePower(*pf)
        for e, r, red in _sweep_reductions(args.case, q, g, args.r, args.conductor, es):
            place = PlaceData(f"q{q}", pp, red)
            if not validate_place(place, g, allow_p2_multiplicative=args.allow_p2_multiplicative).ok:
                continue
            ps = sign_place(place, g, allow_p2_multiplicative=args.allow_p2_multiplicative)
            rows.append(
                (
                    q,
                    "" if e is None else e,
                    "" if r is None else r,
                    args.case,
                    ps.w_iota,
                    ps.w,
                )
            )
    rows.sort(key=lambda row: (row[0], row[1] if row[1] != "" else 0))
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["q", "e", "r", "case", "w_iota", "w"])
    writer.writerows(rows)
    sys.stdout.write(out.getvalue())
    return EXIT_OK


def _as_prime_power(q: int) -> tuple[int, int] | None:
    if q < 2:
        return None
    for p, f, value in prime_powers_upto(q):
        if value == q:
            return p, f
    return None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rmroot",
        description="Root numbers of real-multiplication abelian varieties "
        "from tame local data, with Gauss-sum verification sweeps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate a JSON job file")
    p_eval.add_argument("job", help="path to the job file")
    p_eval.add_argument("--format", choices=("table", "json"), default="table")
    p_eval.add_argument(
        "--allow-p2-multiplicative",
        action="store_true",
        help="evaluate split/non-split multiplicative places with p=2 "
        "(flagged as outside the proved hypotheses)",
    )
    p_eval.set_defaults(func=cmd_eval)

    p_verify = sub.add_parser("verify", help="run an oracle-vs-formula sweep")
    p_verify.add_argument("--suite", choices=sorted(_SUITES), required=True)
    p_verify.add_argument("--pmax", type=int, default=None, help="abelian suite: largest prime")
    p_verify.add_argument("--qmax", type=int, default=None, help="other suites: largest base q")
    p_verify.add_argument("--seed", type=int, default=0, help="seed for exact spot re-checks")
    p_verify.set_defaults(func=cmd_verify)

    p_sweep = sub.add_parser("sweep", help="tabulate signs over a parameter grid as CSV")
    p_sweep.add_argument("--case", choices=_SWEEP_CASES, required=True)
    p_sweep.add_argument("--dimension", type=int, default=1)
    p_sweep.add_argument("--qmax", type=int, default=50)
    p_sweep.add_argument("--q", help="comma-separated residue sizes (overrides --qmax)")
    p_sweep.add_argument("--e", help="comma-separated tame orders (default: all admissible)")
    p_sweep.add_argument("--r", type=int, default=0, help="wild exponent")
    p_sweep.add_argument("--conductor", type=int, default=None, help="induced case: Artin conductor")
    p_sweep.add_argument("--allow-p2-multiplicative", action="store_true")
    p_sweep.set_defaults(func=cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
