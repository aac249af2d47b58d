"""Bundled verification suite: nine numbered checks over the whole pipeline.

Each check exercises one headline property end to end (the weight-12
reproduction, route agreement, functional equation and critical-line roots
with fault injection, exactness of the combinatorial limits, lattice-count
agreement, the bisection zero solver, height bounds, the weight-4
degenerate behavior, and exact combinatorics). `run_acceptance` returns one
CheckResult per check; the CLI `selftest` command and the test suite both
drive this module, so an installed copy can be validated in one command.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction

from .combinat import falling_factorial_poly, stirling_table
from .errors import ZetaPeriodError
from .limits import convergence_study, cotangent_zeros, ehrhart_count, hilbert_pair
from .lvalues import CompletedLValues, all_critical_values
from .newform import corpus, delta_newform
from .polys import assignment_distance, find_roots
from .zeta import (
    FE_TOL,
    RH_TOL,
    ROUTE_TOL,
    SERIES_TOL,
    bloch_kato_moments,
    generating_series_residual,
    period_polynomial,
    verify,
    weighted_moments,
    zeta_direct,
    zeta_via_rv,
)

# Reference data for the weight-12 level-1 form: period-polynomial roots,
# zeta-polynomial root heights, and the zeta-polynomial coefficients in
# descending powers, all as printed in the standard worked example.
R_DELTA_ROOTS = (
    complex(0, 1), complex(0, -1),
    complex(-0.465, 0.885), complex(-0.465, -0.885),
    complex(-0.744, 0.668), complex(-0.744, -0.668),
    complex(-0.911, 0.411), complex(-0.911, -0.411),
    complex(-0.990, 0.140), complex(-0.990, -0.140),
)
Z_DELTA_HEIGHTS = (8.447, 5.002, 2.846, 1.352, 0.349)
Z_DELTA_COEFFS_DESC = (
    5.11e-7, -2.554e-6, 6.01e-5, -2.25e-4, 1.80e-3, -4.63e-3,
    1.55e-2, -2.35e-2, 3.10e-2, -1.99e-2, 5.96e-3,
)
STIRLING_ROWS = (
    (1,),
    (0, 1),
    (0, -1, 1),
    (0, 2, -3, 1),
    (0, -6, 11, -6, 1),
    (0, 24, -50, 35, -10, 1),
    (0, -120, 274, -225, 85, -15, 1),
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def _pipeline(form):
    lv = all_critical_values(form)
    zd = zeta_direct(weighted_moments(lv.values, form.weight), form.sign, form.label)
    rf = period_polynomial(lv.values, form.weight)
    zr = zeta_via_rv(rf, form.weight, form.sign, form.label)
    return lv, zd, zr, rf, verify(zd, partner=zr, period=rf)


def check_delta_reproduction() -> CheckResult:
    started = time.perf_counter()
    form = delta_newform()
    _, zd, _, rf, report = _pipeline(form)
    r_roots = find_roots(rf).roots
    r_dist, _ = assignment_distance(r_roots, R_DELTA_ROOTS)
    z_roots = report.roots.roots
    re_dev = max(abs(z.real - 0.5) for z in z_roots)
    heights = sorted((abs(z.imag) for z in z_roots), reverse=True)
    expected_heights = sorted((h for h in Z_DELTA_HEIGHTS for _ in range(2)), reverse=True)
    h_dist = max(abs(a - b) for a, b in zip(heights, expected_heights))
    coeffs = list(zd.poly.to_floats().coeffs)[::-1]
    coeff_rel = max(
        abs(c - ref) / abs(ref) for c, ref in zip(coeffs, Z_DELTA_COEFFS_DESC)
    )
    elapsed = time.perf_counter() - started
    ok = (
        len(r_roots) == 10
        and r_dist < 5e-3
        and re_dev < 1e-8
        and len(z_roots) == 10
        and h_dist < 5e-3
        and len(coeffs) == 11
        and coeff_rel < 5e-3
        and elapsed < 5.0
    )
    detail = (
        f"period roots off by {r_dist:.2e}, zeta Re dev {re_dev:.2e}, "
        f"heights off by {h_dist:.2e}, coeff rel err {coeff_rel:.2e}, "
        f"{elapsed:.2f}s"
    )
    return CheckResult("delta_reproduction", ok, detail)


def check_cross_route() -> CheckResult:
    worst_route = 0.0
    worst_series = 0.0
    for form in corpus():
        _, zd, zr, rf, report = _pipeline(form)
        worst_route = max(worst_route, report.route_discrepancy)
        worst_series = max(worst_series, generating_series_residual(zd, rf))
        worst_series = max(worst_series, generating_series_residual(zr, rf))
    ok = worst_route < ROUTE_TOL and worst_series < SERIES_TOL
    detail = (
        f"route discrepancy <= {worst_route:.2e} (tol {ROUTE_TOL:.0e}), "
        f"series residual <= {worst_series:.2e} (tol {SERIES_TOL:.0e}) "
        f"over {len(corpus())} forms"
    )
    return CheckResult("cross_route_equivalence", ok, detail)


def _fault_injected_fails(form) -> bool:
    lv = all_critical_values(form)
    tampered = list(lv.values)
    tampered[-1] = -tampered[-1]
    bad = CompletedLValues(tuple(tampered), lv.err_bound, lv.terms_used)
    try:
        zd = zeta_direct(weighted_moments(bad.values, form.weight), form.sign, form.label)
        rf = period_polynomial(bad.values, form.weight)
        zr = zeta_via_rv(rf, form.weight, form.sign, form.label)
        report = verify(zd, partner=zr, period=rf)
    except ZetaPeriodError:
        return True
    return not report.passed


def check_fe_rh_fault() -> CheckResult:
    worst_fe = 0.0
    worst_re = 0.0
    for form in corpus():
        _, _, _, _, report = _pipeline(form)
        worst_fe = max(worst_fe, report.fe_residual)
        worst_re = max(worst_re, report.max_re_deviation)
    faults_detected = all(
        _fault_injected_fails(form)
        for form in (delta_newform(), *(f for f in corpus() if f.sign == -1))
    )
    ok = worst_fe < FE_TOL and worst_re < RH_TOL and faults_detected
    detail = (
        f"reflection residual <= {worst_fe:.2e} (tol {FE_TOL:.0e}), "
        f"Re deviation <= {worst_re:.2e} (tol {RH_TOL:.0e}), "
        f"fault injection detected: {faults_detected}"
    )
    return CheckResult("functional_equation_and_critical_line", ok, detail)


def check_weight6_minus_exact() -> CheckResult:
    minus = hilbert_pair(6).minus
    coeffs_ok = minus.coeffs == (Fraction(1), Fraction(7, 3), Fraction(1), Fraction(2, 3))
    roots = find_roots(minus.compose_neg()).roots
    expected = (
        complex(0.5, 0.0),
        complex(0.5, math.sqrt(11) / 2),
        complex(0.5, -math.sqrt(11) / 2),
    )
    dist, _ = assignment_distance(roots, expected)
    ok = coeffs_ok and dist < 1e-10
    detail = f"exact coefficients: {coeffs_ok}, root distance {dist:.2e} (tol 1e-10)"
    return CheckResult("weight6_minus_polynomial_exact", ok, detail)


def check_ehrhart() -> CheckResult:
    started = time.perf_counter()
    mismatches = []
    for k in (6, 8, 10):
        minus = hilbert_pair(k).minus
        for m in range(6):
            count = ehrhart_count(k, m)
            if Fraction(count) != minus(m):
                mismatches.append((k, m, count, str(minus(m))))
    elapsed = time.perf_counter() - started
    ok = not mismatches and elapsed < 30.0
    detail = (
        f"18 lattice counts equal the polynomial values exactly, {elapsed:.2f}s"
        if not mismatches
        else f"mismatches: {mismatches}"
    )
    return CheckResult("ehrhart_lattice_counts", ok, detail)


def check_zero_solver() -> CheckResult:
    worst_gap = 0.0
    for k in (6, 8, 10, 12, 16, 20):
        pair = hilbert_pair(k)
        for sign, poly in ((1, pair.plus), (-1, pair.minus)):
            zeros = cotangent_zeros(k, sign).zeros
            roots = find_roots(poly.compose_neg()).roots
            gap, _ = assignment_distance(zeros, roots)
            worst_gap = max(worst_gap, gap)
    worst_band = 0.0
    for k in range(20, 41, 2):
        for sign, predicted in (
            (-1, (k - 3) * (k - 1) / (2 * math.pi)),
            (1, (k - 3) * (k - 1) / math.pi),
        ):
            top = max(cotangent_zeros(k, sign).heights)
            worst_band = max(worst_band, abs(top - predicted) / predicted)
    ok = worst_gap < 1e-9 and worst_band < 0.15
    detail = (
        f"solver vs root finder gap <= {worst_gap:.2e} (tol 1e-9), "
        f"top-height deviation from the asymptotic <= {worst_band:.1%} (band 15%)"
    )
    return CheckResult("bisection_zero_solver", ok, detail)


def check_height_bounds() -> CheckResult:
    checked = 0
    worst_margin = 0.0
    for form in corpus():
        if form.weight < 6:
            continue  # weight 4 is the degenerate case, covered separately
        _, _, _, _, report = _pipeline(form)
        if report.height_bound is None or not report.height_ok:
            return CheckResult(
                "root_height_bounds", False,
                f"{form.label}: height {report.max_height:.3f} "
                f"vs bound {report.height_bound}",
            )
        checked += 1
        worst_margin = max(worst_margin, report.max_height / report.height_bound)
    detail = (
        f"{checked} forms of weight >= 6 stay below the sign-dependent bound "
        f"(largest height/bound ratio {worst_margin:.2f})"
    )
    return CheckResult("root_height_bounds", checked > 0, detail)


def check_weight4_degenerate() -> CheckResult:
    minus_forms = [f for f in corpus() if f.weight == 4 and f.sign == -1]
    plus_forms = [f for f in corpus() if f.weight == 4 and f.sign == 1]
    if not minus_forms or len(plus_forms) < 2:
        return CheckResult(
            "weight4_degenerate_cases", False,
            "corpus lacks a weight-4 sign -1 form or a sign +1 family",
        )
    linear_ok = True
    linear_detail = []
    for form in minus_forms:
        _, zd, _, _, _ = _pipeline(form)
        coeffs = zd.poly.to_floats().coeffs
        good = (
            len(coeffs) == 2
            and coeffs[1] > 0
            and abs(coeffs[1] + 2 * coeffs[0]) <= 1e-9 * abs(coeffs[1])
        )
        linear_ok = linear_ok and good
        linear_detail.append(f"{form.label}: {coeffs[1]:.3e}*(s - 1/2)*2")
    study = convergence_study(plus_forms)
    trend_ok = study.first_to_last_decreased
    distances = ", ".join(
        f"N={row.level}: {row.max_distance:.4f}" for row in study.rows
    )
    ok = linear_ok and trend_ok
    detail = (
        f"sign -1 gives a positive multiple of 2s-1 ({'; '.join(linear_detail)}); "
        f"sign +1 root distance to exp(+-i*pi/3) by level: {distances}; "
        f"first-to-last decreased: {trend_ok}"
    )
    return CheckResult("weight4_degenerate_cases", ok, detail)


def check_combinatorics() -> CheckResult:
    table = stirling_table(6)
    triangle_ok = tuple(tuple(row) for row in table) == STIRLING_ROWS
    identity_ok = True
    for n in range(31):
        row = [Fraction(stirling_table(n)[n][m]) for m in range(n + 1)]
        if tuple(row) != falling_factorial_poly(n):
            identity_ok = False
            break
    worst = 0.0
    for form in corpus():
        lv = all_critical_values(form)
        moments = weighted_moments(lv.values, form.weight)
        bk = bloch_kato_moments(lv, form.weight)
        scale = max(abs(m) for m in moments)
        for m in range(form.weight - 1):
            worst = max(worst, abs(bk.moment(m) - moments[m]) / scale)
    ok = triangle_ok and identity_ok and worst < 1e-10
    detail = (
        f"triangle through n=6 exact: {triangle_ok}, "
        f"falling-factorial identity exact to n=30: {identity_ok}, "
        f"moment identity residual <= {worst:.2e} (tol 1e-10)"
    )
    return CheckResult("combinatorics_exactness", ok, detail)


def run_acceptance() -> list:
    """All nine checks, in their numbered order."""
    return [
        check_delta_reproduction(),
        check_cross_route(),
        check_fe_rh_fault(),
        check_weight6_minus_exact(),
        check_ehrhart(),
        check_zero_solver(),
        check_height_bounds(),
        check_weight4_degenerate(),
        check_combinatorics(),
    ]
