"""Zeta-polynomial assembly: both routes, their agreement, the verification

report, and the failure paths.
"""

import math
from fractions import Fraction

import pytest

from zetaperiod import (
    Poly,
    RemainderTooLarge,
    ValueAtOneVanishes,
    all_critical_values,
    bloch_kato_moments,
    generating_series_residual,
    hilbert_pair,
    load_bundled,
    period_polynomial,
    rv_transform,
    verify,
    weighted_moments,
    zeta_direct,
    zeta_via_rv,
)


def pipeline(form):
    lv = all_critical_values(form)
    moments = weighted_moments(lv.values, form.weight)
    zd = zeta_direct(moments, form.sign, form.label)
    rf = period_polynomial(lv.values, form.weight)
    zr = zeta_via_rv(rf, form.weight, form.sign, form.label)
    return lv, zd, zr, rf


class TestPeriodPolynomial:
    def test_delta_rational_ratios(self, delta):
        # Manin: coefficient ratios within each parity class are rational
        lv = all_critical_values(delta)
        c = period_polynomial(lv.values, 12).coeffs
        even = {2: Fraction(691, 36), 4: Fraction(691, 12),
                6: Fraction(691, 12), 8: Fraction(691, 36), 10: Fraction(1)}
        for j, expect in even.items():
            assert c[j] / c[0] == pytest.approx(float(expect), rel=1e-9), j
        odd = {3: Fraction(25, 4), 5: Fraction(21, 2),
               7: Fraction(25, 4), 9: Fraction(1)}
        for j, expect in odd.items():
            assert c[j] / c[1] == pytest.approx(float(expect), rel=1e-9), j
        assert c[0] / c[2] == pytest.approx(36 / 691, rel=1e-9)

    def test_delta_display_scales(self, delta):
        lv = all_critical_values(delta)
        c = period_polynomial(lv.values, 12).coeffs
        assert c[2] == pytest.approx(0.114379, rel=5e-6)
        assert c[1] / 4 == pytest.approx(0.00926927, rel=5e-6)

    def test_palindromic_coefficients(self, delta):
        lv = all_critical_values(delta)
        c = period_polynomial(lv.values, 12).coeffs
        for j in range(11):
            assert c[j] == pytest.approx(c[10 - j], rel=1e-11)

    def test_length_validation(self):
        with pytest.raises(ValueError):
            period_polynomial((1.0, 2.0), 12)


class TestMoments:
    def test_matches_direct_sum(self, delta):
        lv = all_critical_values(delta)
        k = 12
        moments = weighted_moments(lv.values, k)
        fact = math.factorial(k - 2)
        for m in range(k - 1):
            expected = math.fsum(
                math.comb(k - 2, j) * (1 if (j == 0 and m == 0) else j**m)
                * lv.values[j] / fact
                for j in range(k - 1)
            )
            assert moments[m] == pytest.approx(expected, rel=1e-13)

    def test_bloch_kato_is_rescaled_moments(self, delta):
        lv = all_critical_values(delta)
        k = 12
        moments = weighted_moments(lv.values, k)
        bk = bloch_kato_moments(lv, k)
        for m in range(k - 1):
            assert bk.moment(m) == pytest.approx(moments[m], rel=1e-10)

    def test_bloch_kato_central_zeroing(self):
        f = load_bundled("36.6.tw1")
        lv = all_critical_values(f)
        bk = bloch_kato_moments(lv, f.weight)
        assert bk.values[f.weight // 2 - 1] == 0.0
        assert bk.values[0] != 0.0

    def test_length_validation(self):
        with pytest.raises(ValueError):
            weighted_moments((1.0,), 12)
        with pytest.raises(ValueError):
            zeta_direct((1.0, 2.0, 3.0), 0)


class TestTwoRoutes:
    def test_routes_agree_on_corpus(self, all_forms):
        for f in all_forms:
            lv, zd, zr, rf = pipeline(f)
            report = verify(zd, zr, rf)
            assert report.passed, (f.label, report.to_dict())
            assert report.route_discrepancy < 1e-9, f.label
            assert report.fe_residual < 1e-9, f.label
            assert report.max_re_deviation < 1e-8, f.label

    def test_series_identity_both_routes(self, delta):
        lv, zd, zr, rf = pipeline(delta)
        assert generating_series_residual(zd, rf) < 1e-9
        assert generating_series_residual(zr, rf) < 1e-9

    def test_minus_sign_routes(self):
        for label in ("80.4.tw1", "36.6.tw1"):
            f = load_bundled(label)
            lv, zd, zr, rf = pipeline(f)
            assert verify(zd, zr, rf).passed, label
            assert generating_series_residual(zd, rf) < 1e-9, label

    def test_weight4_minus_is_positive_multiple_of_2s_minus_1(self):
        f = load_bundled("80.4.tw1")
        _, zd, zr, _ = pipeline(f)
        for zp in (zd, zr):
            c = zp.poly.to_floats().coeffs
            assert len(c) == 2
            assert c[1] > 0
            assert c[0] == pytest.approx(-c[1] / 2, rel=1e-9)

    def test_scale_invariance(self, delta):
        lv = all_critical_values(delta)
        k = 12
        base = zeta_direct(weighted_moments(lv.values, k), 1).poly.coeffs
        # powers of two scale exactly through the float assembly
        exact = zeta_direct(
            weighted_moments(tuple(4.0 * v for v in lv.values), k), 1).poly.coeffs
        assert exact == tuple(4.0 * b for b in base)
        # generic scales are limited by the conditioning of the assembly
        rough = zeta_direct(
            weighted_moments(tuple(3.7 * v for v in lv.values), k), 1).poly.coeffs
        for b, s in zip(base, rough):
            assert s == pytest.approx(3.7 * b, rel=1e-9)

    def test_fault_injection_fails_verification(self, delta):
        lv = all_critical_values(delta)
        k = 12
        bad = lv.values[:-1] + (-lv.values[-1],)
        zd = zeta_direct(weighted_moments(bad, k), 1, "faulted")
        rf = period_polynomial(bad, k)
        zr = zeta_via_rv(rf, k, 1, "faulted")
        assert not verify(zd, zr, rf).passed


class TestRvTransform:
    def test_exact_uniform_input_matches_minus_limit(self):
        for k in (4, 6, 8):
            u = Poly(tuple(Fraction(1) for _ in range(k - 2)))
            got = rv_transform(u).compose_neg()
            assert got.coeffs == hilbert_pair(k).minus.coeffs, k

    def test_exact_endpoint_input_matches_plus_limit(self):
        for k in (6, 8):
            coeffs = [Fraction(0)] * (k - 1)
            coeffs[0] = Fraction(1)
            coeffs[k - 2] = Fraction(1)
            got = rv_transform(Poly(tuple(coeffs))).compose_neg()
            assert got.coeffs == hilbert_pair(k).plus.coeffs, k

    def test_float_input_rounds_once(self):
        u = Poly((1.0, 1.0, 1.0, 1.0))
        got = rv_transform(u)
        exact = rv_transform(Poly(tuple(Fraction(1) for _ in range(4))))
        for g, e in zip(got.coeffs, exact.coeffs):
            assert g == float(e)

    def test_value_at_one_vanishes(self):
        with pytest.raises(ValueAtOneVanishes):
            rv_transform(Poly((Fraction(1), Fraction(-1))))
        with pytest.raises(ValueAtOneVanishes):
            rv_transform(Poly((1.0, -1.0)))

    def test_complex_input_rejected(self):
        with pytest.raises(TypeError):
            rv_transform(Poly((1j, 1.0)))

    def test_remainder_too_large(self, delta):
        # the even-sign period polynomial has R(1) far from 0, so asking for
        # the odd-sign division must be refused
        lv = all_critical_values(delta)
        rf = period_polynomial(lv.values, 12)
        with pytest.raises(RemainderTooLarge):
            zeta_via_rv(rf, 12, -1)


class TestVerificationReport:
    def test_delta_report_fields(self, delta):
        lv, zd, zr, rf = pipeline(delta)
        report = verify(zd, zr, rf)
        assert report.weight == 12 and report.eps == 1
        assert report.degree_expected == 10 == report.degree_actual
        assert report.height_bound == pytest.approx((12 - 3) * (12 - 3.5))
        assert report.max_height < report.height_bound
        assert len(report.roots.roots) == 10
        d = report.to_dict()
        assert d["passed"] is True
        assert set(d) == {"source", "weight", "eps", "degree", "functional_equation",
                          "critical_line", "height", "cross_route", "series_identity",
                          "passed"}

    def test_weight4_has_no_closed_form_height_bound(self):
        f = load_bundled("80.4.tw1")
        _, zd, zr, rf = pipeline(f)
        report = verify(zd, zr, rf)
        assert report.height_bound is None
        assert report.height_ok

    def test_minus_sign_degree_drop_recorded(self):
        f = load_bundled("36.6.tw1")
        _, zd, _, _ = pipeline(f)
        assert zd.expected_degree == f.weight - 3
        assert zd.poly.degree == f.weight - 3
        assert len(zd.dropped) == 1

    def test_verify_without_partner_or_period(self, delta):
        lv, zd, _, _ = pipeline(delta)
        report = verify(zd)
        assert report.route_discrepancy is None and report.route_ok
        assert report.series_residual is None and report.series_ok
        assert report.passed
