"""Command-line interface: analyze newforms, inspect limit polynomials,

count lattice points, run convergence studies, and self-test the install.

Commands

  analyze      full pipeline for one newform: completed values, period and
               zeta polynomials by both routes, roots, verification, report
  roots        root sets only (period and zeta polynomials)
  limits       the two limit polynomials for a weight: exact coefficients
               plus zero heights from the bisection solver and the root
               finder
  ehrhart      lattice-point counts of the dilated simplex vs the minus
               limit polynomial
  convergence  root distance to the limit zeros across the bundled forms of
               one weight and sign
  selftest     the bundled nine-check acceptance suite

Artifacts are written into --output (default: current directory). JSON
reports are deterministic: keys are sorted and the timing block contains
work counters, never wall-clock times. Exit codes: 0 success, 1 a
mathematical verification failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .acceptance import run_acceptance
from .errors import (
    AmbiguousSign,
    BracketFailure,
    InsufficientCoefficients,
    NoConvergence,
    ParseError,
    RemainderTooLarge,
    TooLarge,
    UnknownSign,
    ValidationError,
    ValueAtOneVanishes,
    VerificationFailure,
    ZetaPeriodError,
)
from .limits import convergence_study, cotangent_zeros, ehrhart_count, hilbert_pair
from .lvalues import all_critical_values, check_value_invariants
from .newform import (
    NewformData,
    bundled_labels,
    delta_newform,
    detect_sign,
    load_bundled,
    load_newform,
)
from .polys import assignment_distance, find_roots
from .zeta import (
    bloch_kato_moments,
    period_polynomial,
    verify,
    weighted_moments,
    zeta_direct,
    zeta_via_rv,
)

USAGE_EXIT = 2
MATH_EXIT = 1

_INPUT_ERRORS = (
    ParseError,
    ValidationError,
    InsufficientCoefficients,
    UnknownSign,
    TooLarge,
    ValueError,
)
_MATH_ERRORS = (
    VerificationFailure,
    NoConvergence,
    RemainderTooLarge,
    ValueAtOneVanishes,
    BracketFailure,
    AmbiguousSign,
)


def _cpx(z: complex) -> list:
    return [float(z.real), float(z.imag)]


def _rational_str(value) -> str:
    return str(Fraction(value))


def _write_json(path: Path, doc: dict) -> None:
    path.write_text(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    print(f"wrote {path}")


def _write_csv(path: Path, header: list, rows: list) -> None:
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    print(f"wrote {path}")


def _precision(text: str) -> float:
    value = float(text)
    if not (1e-15 <= value <= 1e-3):
        raise argparse.ArgumentTypeError("precision must lie in [1e-15, 1e-3]")
    return value


def _emit_set(text: str) -> set:
    parts = {p.strip() for p in text.split(",") if p.strip()}
    bad = parts - {"json", "csv", "svg"}
    if bad:
        raise argparse.ArgumentTypeError(f"unknown emit formats: {sorted(bad)}")
    return parts or {"json"}


def _resolve_form(args) -> NewformData:
    if args.target and args.input:
        raise ValidationError("give either a label or --input, not both")
    if args.target:
        if args.target == "delta":
            return delta_newform()
        return load_bundled(args.target)
    if not args.input:
        raise ValidationError(
            "nothing to analyze: pass 'delta', a bundled label "
            f"({', '.join(bundled_labels())}), or --input FILE"
        )
    path = Path(args.input)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from None
    fmt = "csv" if path.suffix.lower() == ".csv" else "json"
    if fmt == "csv":
        if args.level is None or args.weight is None:
            raise ValidationError("CSV input needs --level and --weight")
        form = load_newform(text, fmt="csv", label=path.stem, level=args.level,
                            weight=args.weight, sign=args.sign)
    else:
        form = load_newform(text)
    # Two-split consistency doubles as a modularity check on user input: it
    # also flags corrupted coefficient lists, which single-split functional
    # equation residuals structurally cannot see.
    detected = detect_sign(form, args.precision)
    if form.sign is None:
        form = form.with_sign(detected)
    return form


def _full_pipeline(form: NewformData, target_err):
    lv = all_critical_values(form, target_err)
    moments = weighted_moments(lv.values, form.weight)
    zd = zeta_direct(moments, form.sign, form.label)
    rf = period_polynomial(lv.values, form.weight)
    zr = zeta_via_rv(rf, form.weight, form.sign, form.label)
    report = verify(zd, partner=zr, period=rf)
    return lv, moments, zd, zr, rf, report


def _meta(form: NewformData, command: str, target_err) -> dict:
    return {
        "command": command,
        "label": form.label,
        "level": form.level,
        "weight": form.weight,
        "sign": form.sign,
        "target_err": target_err,
        "version": __version__,
    }


def _roots_svg(path: Path, label: str, period_roots, zeta_roots) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    plt.rcParams["svg.hashsalt"] = "zetaperiod"
    fig, (left, right) = plt.subplots(1, 2, figsize=(9.0, 4.4))
    circle = [complex(math.cos(a), math.sin(a))
              for a in [i * 2 * math.pi / 256 for i in range(257)]]
    left.plot([z.real for z in circle], [z.imag for z in circle],
              color="0.7", lw=0.8)
    left.scatter([z.real for z in period_roots], [z.imag for z in period_roots],
                 s=22, color="tab:blue", zorder=3)
    left.set_title(f"period polynomial roots, {label}")
    left.set_xlabel("Re")
    left.set_ylabel("Im")
    left.set_aspect("equal")
    right.axvline(0.5, color="0.7", lw=0.8)
    right.scatter([z.real for z in zeta_roots], [z.imag for z in zeta_roots],
                  s=22, color="tab:red", zorder=3)
    right.set_title(f"zeta polynomial roots, {label}")
    right.set_xlabel("Re(s)")
    right.set_ylabel("Im(s)")
    for ax in (left, right):
        ax.grid(True, lw=0.3, alpha=0.5)
    fig.tight_layout()
    fig.savefig(path, metadata={"Date": None})
    plt.close(fig)
    print(f"wrote {path}")


def cmd_analyze(args) -> int:
    form = _resolve_form(args)
    lv, moments, zd, zr, rf, report = _full_pipeline(form, args.precision)
    problems = check_value_invariants(lv, form)
    r_roots = find_roots(rf)
    unit_dev = max(abs(abs(z) - 1.0) for z in r_roots.roots)
    bk = bloch_kato_moments(lv, form.weight)
    scale = max(abs(m) for m in moments)
    bk_residual = max(
        abs(bk.moment(m) - moments[m]) / scale for m in range(form.weight - 1)
    )
    doc = {
        "meta": _meta(form, "analyze", args.precision),
        "lvalues": {
            "s": list(range(1, form.weight)),
            "values": [float(v) for v in lv.values],
            "err_bound": lv.err_bound,
            "terms_used": lv.terms_used,
            "invariant_problems": problems,
        },
        "period_poly": {
            "coeffs_ascending": list(rf.to_floats().coeffs),
            "roots": [_cpx(z) for z in r_roots.roots],
            "max_unit_circle_deviation": unit_dev,
        },
        "zeta_poly": {
            "direct": {"coeffs_ascending": list(zd.poly.to_floats().coeffs)},
            "rv": {"coeffs_ascending": list(zr.poly.to_floats().coeffs)},
            "route_discrepancy": report.route_discrepancy,
        },
        "roots": {
            "zeta": [_cpx(z) for z in report.roots.roots],
            "max_re_deviation": report.max_re_deviation,
            "heights": sorted((abs(z.imag) for z in report.roots.roots),
                              reverse=True),
        },
        "verification": report.to_dict(),
        "bloch_kato": {
            "values": list(bk.values),
            "moment_identity_residual": bk_residual,
        },
        "timing": {
            "deterministic": True,
            "lseries_terms": lv.terms_used,
            "period_root_sweeps": r_roots.sweeps,
            "zeta_root_sweeps": report.roots.sweeps,
        },
    }
    out = Path(args.output)
    if "json" in args.emit:
        _write_json(out / "report.json", doc)
    if "csv" in args.emit:
        _write_csv(out / "lvalues.csv", ["s", "lambda"],
                   [[s, repr(v)] for s, v in zip(doc["lvalues"]["s"], lv.values)])
    if "svg" in args.emit:
        _roots_svg(out / "roots.svg", form.label, r_roots.roots, report.roots.roots)
    passed = report.passed and not problems
    print(f"{form.label}: verification {'passed' if passed else 'FAILED'}")
    return 0 if passed else MATH_EXIT


def cmd_roots(args) -> int:
    form = _resolve_form(args)
    _, _, zd, zr, rf, report = _full_pipeline(form, args.precision)
    r_roots = find_roots(rf)
    doc = {
        "meta": _meta(form, "roots", args.precision),
        "period_roots": [_cpx(z) for z in r_roots.roots],
        "max_unit_circle_deviation": max(abs(abs(z) - 1.0) for z in r_roots.roots),
        "zeta_roots": [_cpx(z) for z in report.roots.roots],
        "max_re_deviation": report.max_re_deviation,
        "passed": report.passed,
    }
    out = Path(args.output)
    if "json" in args.emit:
        _write_json(out / "roots.json", doc)
    if "csv" in args.emit:
        rows = [["period", repr(z.real), repr(z.imag)] for z in r_roots.roots]
        rows += [["zeta", repr(z.real), repr(z.imag)] for z in report.roots.roots]
        _write_csv(out / "roots.csv", ["family", "re", "im"], rows)
    if "svg" in args.emit:
        _roots_svg(out / "roots.svg", form.label, r_roots.roots, report.roots.roots)
    print(f"{form.label}: {len(report.roots.roots)} zeta roots, "
          f"Re deviation {report.max_re_deviation:.2e}")
    return 0 if report.passed else MATH_EXIT


def _limit_side(weight: int, sign: int, poly) -> tuple[dict, float]:
    solved = cotangent_zeros(weight, sign)
    roots = find_roots(poly.compose_neg())
    gap, _ = assignment_distance(solved.zeros, roots.roots)
    side = {
        "coeffs_ascending": [_rational_str(c) for c in poly.coeffs],
        "degree": poly.degree,
        "solver_heights": list(solved.heights),
        "solver_residual_max": max(solved.residuals),
        "polyroot_heights": sorted((z.imag for z in roots.roots), reverse=True),
        "solver_vs_polyroot_gap": gap,
    }
    return side, gap


def cmd_limits(args) -> int:
    if args.weight is None:
        raise ValidationError("limits needs --weight")
    pair = hilbert_pair(args.weight)
    plus, gap_plus = _limit_side(args.weight, 1, pair.plus)
    minus, gap_minus = _limit_side(args.weight, -1, pair.minus)
    doc = {
        "meta": {"command": "limits", "weight": args.weight, "version": __version__},
        "plus": plus,
        "minus": minus,
    }
    out = Path(args.output)
    if "json" in args.emit:
        _write_json(out / "limits.json", doc)
    if "csv" in args.emit:
        rows = [["+1", repr(t)] for t in plus["solver_heights"]]
        rows += [["-1", repr(t)] for t in minus["solver_heights"]]
        _write_csv(out / "limits.csv", ["sign", "height"], rows)
    if "svg" in args.emit:
        zero_sets = (
            [complex(0.5, t) for t in plus["solver_heights"]],
            [complex(0.5, t) for t in minus["solver_heights"]],
        )
        _roots_svg(out / "limits.svg", f"weight {args.weight} limits", *zero_sets)
    worst = max(gap_plus, gap_minus)
    print(f"weight {args.weight}: solver and root finder agree to {worst:.2e}")
    return 0 if worst < 1e-9 else MATH_EXIT


def cmd_ehrhart(args) -> int:
    if args.weight is None:
        raise ValidationError("ehrhart needs --weight")
    minus = hilbert_pair(args.weight).minus
    rows = []
    all_equal = True
    for m in range(args.max_dilate + 1):
        count = ehrhart_count(args.weight, m)
        value = minus(m)
        equal = Fraction(count) == value
        all_equal = all_equal and equal
        rows.append({"dilation": m, "lattice_count": count,
                     "polynomial_value": _rational_str(value), "equal": equal})
    doc = {
        "meta": {"command": "ehrhart", "weight": args.weight,
                 "dimension": args.weight - 3, "version": __version__},
        "rows": rows,
        "all_equal": all_equal,
    }
    out = Path(args.output)
    if "json" in args.emit:
        _write_json(out / "ehrhart.json", doc)
    if "csv" in args.emit:
        _write_csv(out / "ehrhart.csv",
                   ["dilation", "lattice_count", "polynomial_value", "equal"],
                   [[r["dilation"], r["lattice_count"], r["polynomial_value"],
                     r["equal"]] for r in rows])
    print(f"weight {args.weight}: counts match polynomial values: {all_equal}")
    return 0 if all_equal else MATH_EXIT


def cmd_convergence(args) -> int:
    if args.weight is None or args.sign is None:
        raise ValidationError("convergence needs --weight and --sign")
    from .newform import corpus

    family = [f for f in corpus() if f.weight == args.weight and f.sign == args.sign]
    if len(family) < 2:
        raise ValidationError(
            f"need at least two bundled forms of weight {args.weight} "
            f"sign {args.sign:+d}, found {len(family)}"
        )
    study = convergence_study(family, args.precision)
    doc = {"meta": {"command": "convergence", "version": __version__}}
    doc.update(study.to_dict())
    out = Path(args.output)
    if "json" in args.emit:
        _write_json(out / "convergence.json", doc)
    if "csv" in args.emit:
        _write_csv(out / "convergence.csv",
                   ["label", "level", "max_distance", "mean_distance"],
                   [[r.label, r.level, repr(r.max_distance), repr(r.mean_distance)]
                    for r in study.rows])
    for row in study.rows:
        print(f"  level {row.level:4d}  {row.label:>12}  "
              f"max {row.max_distance:.5f}  mean {row.mean_distance:.5f}")
    print(f"first-to-last distance decreased: {study.first_to_last_decreased}")
    return 0


def cmd_selftest(args) -> int:
    results = run_acceptance()
    for r in results:
        print(("PASS" if r.passed else "FAIL") + f" {r.name}: {r.detail}")
    all_passed = all(r.passed for r in results)
    if "json" in args.emit:
        doc = {
            "meta": {"command": "selftest", "version": __version__},
            "results": [r.to_dict() for r in results],
            "all_passed": all_passed,
        }
        _write_json(Path(args.output) / "selftest.json", doc)
    print(f"selftest: {'all checks passed' if all_passed else 'FAILURES present'}")
    return 0 if all_passed else MATH_EXIT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zetaperiod",
        description="zeta-polynomials from critical L-values of newforms",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_form: bool):
        p.add_argument("--precision", type=_precision, default=None,
                       help="absolute error target for completed L-values")
        p.add_argument("--emit", type=_emit_set, default={"json"},
                       help="comma list from json,csv,svg (default json)")
        p.add_argument("--output", default=".", help="output directory")
        if with_form:
            p.add_argument("target", nargs="?", default="",
                           help="'delta' or a bundled label")
            p.add_argument("--input", default="", help="newform JSON or CSV file")
            p.add_argument("--level", type=int, default=None,
                           help="level (CSV input only)")
        p.add_argument("--weight", type=int, default=None,
                       help="even weight >= 4")
        p.add_argument("--sign", type=int, choices=(1, -1), default=None,
                       help="functional-equation sign")

    p_analyze = sub.add_parser("analyze", help="full pipeline for one newform")
    common(p_analyze, with_form=True)
    p_analyze.set_defaults(func=cmd_analyze)

    p_roots = sub.add_parser("roots", help="period and zeta root sets")
    common(p_roots, with_form=True)
    p_roots.set_defaults(func=cmd_roots)

    p_lim = sub.add_parser("limits", help="limit polynomials and their zeros")
    common(p_lim, with_form=False)
    p_lim.set_defaults(func=cmd_limits)

    p_ehr = sub.add_parser("ehrhart", help="lattice counts vs the minus polynomial")
    common(p_ehr, with_form=False)
    p_ehr.add_argument("--max-dilate", type=int, default=5,
                       help="largest dilation factor (default 5)")
    p_ehr.set_defaults(func=cmd_ehrhart)

    p_conv = sub.add_parser("convergence",
                            help="root distance to the limit zeros across levels")
    common(p_conv, with_form=False)
    p_conv.set_defaults(func=cmd_convergence)

    p_self = sub.add_parser("selftest", help="run the bundled acceptance suite")
    common(p_self, with_form=False)
    p_self.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Path(args.output)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        print(f"error: cannot create output directory {out}: {exc}", file=sys.stderr)
        return USAGE_EXIT
    try:
        return args.func(args)
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    except _MATH_ERRORS as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return MATH_EXIT
    except ZetaPeriodError as exc:  # residual library errors are input-shaped
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT


if __name__ == "__main__":
    sys.exit(main())
