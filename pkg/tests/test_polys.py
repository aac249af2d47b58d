"""Polynomial engine: exact arithmetic, series expansion, interpolation,

root finding, and the reflection/assignment utilities.
"""

import math
from fractions import Fraction

import pytest

from zetaperiod import (
    DuplicateNode,
    NoConvergence,
    Poly,
    assignment_distance,
    find_roots,
    newton_interpolate,
    poly_reflect_functional,
    series_coeffs_of_ratio,
    truncate_small_leading,
)


def poly_from_roots(roots) -> Poly:
    out = [1.0 + 0.0j]
    for r in roots:
        nxt = [0j] * (len(out) + 1)
        for i, c in enumerate(out):
            nxt[i + 1] += c
            nxt[i] -= r * c
        out = nxt
    return Poly(tuple(out))


class TestPolyBasics:
    def test_leading_zero_strip_and_kind(self):
        p = Poly((Fraction(1), Fraction(2), Fraction(0)))
        assert p.coeffs == (Fraction(1), Fraction(2))
        assert p.kind == "rational"
        assert Poly((1.0, 2.5)).kind == "real"
        assert Poly((1, 1j)).kind == "complex"

    def test_exact_evaluation(self):
        p = Poly((Fraction(1, 3), Fraction(-2), Fraction(1)))
        value = p(Fraction(5, 2))
        assert value == Fraction(1, 3) - 2 * Fraction(5, 2) + Fraction(25, 4)
        assert isinstance(value, Fraction)

    def test_arithmetic_agrees_with_pointwise(self):
        p = Poly((1.0, -2.0, 0.5))
        q = Poly((3.0, 4.0))
        for x in (-1.5, 0.0, 2.25):
            assert (p + q)(x) == pytest.approx(p(x) + q(x), rel=1e-15, abs=1e-15)
            assert (p - q)(x) == pytest.approx(p(x) - q(x), rel=1e-15, abs=1e-15)
            assert (p * q)(x) == pytest.approx(p(x) * q(x), rel=1e-14)
            assert p.scale(3.5)(x) == pytest.approx(3.5 * p(x), rel=1e-15)
            assert p.compose_neg()(x) == pytest.approx(p(-x), rel=1e-15, abs=1e-15)

    def test_degree_and_zero(self):
        assert Poly((0,)).is_zero()
        assert Poly((Fraction(0), Fraction(0))).is_zero()
        assert Poly((1, 2, 3)).degree == 2

    def test_truncate_small_leading(self):
        p = Poly((1.0, 2.0, 1e-14))
        trimmed, dropped = truncate_small_leading(p)
        assert trimmed.coeffs == (1.0, 2.0)
        assert dropped == [1e-14]
        q = Poly((1.0, 2.0, 3.0))
        same, none_dropped = truncate_small_leading(q)
        assert same.coeffs == q.coeffs and none_dropped == []


class TestSeries:
    def test_against_naive_convolution(self):
        for numer_coeffs, pole in (((1,), 4), ((1, 1), 3), ((2, 0, -1), 5)):
            count = 9
            got = series_coeffs_of_ratio(Poly(numer_coeffs), pole, count)
            # naive: numer * sum_n C(n+pole-1, pole-1) z^n
            denom_series = [math.comb(n + pole - 1, pole - 1) for n in range(count)]
            expected = []
            for n in range(count):
                acc = 0
                for j, c in enumerate(numer_coeffs):
                    if j <= n:
                        acc += c * denom_series[n - j]
                expected.append(acc)
            assert [Fraction(g) for g in got] == [Fraction(e) for e in expected]

    def test_exact_rational_arithmetic(self):
        got = series_coeffs_of_ratio(Poly((Fraction(1, 3),)), 2, 4)
        assert got == [Fraction(1, 3) * (n + 1) for n in range(4)]

    def test_geometric_series(self):
        assert series_coeffs_of_ratio(Poly((1,)), 1, 6) == [1] * 6


class TestInterpolation:
    def test_exact_round_trip(self):
        p = Poly((Fraction(3, 7), Fraction(-1), Fraction(0), Fraction(2, 5)))
        nodes = [0, 1, 2, 3]
        values = [p(n) for n in nodes]
        q = newton_interpolate(nodes, values)
        assert q.coeffs == p.coeffs

    def test_float_inputs(self):
        nodes = [0.0, 1.0, 2.0]
        values = [1.0, 0.5, 3.0]
        q = newton_interpolate(nodes, values)
        for n, v in zip(nodes, values):
            assert q(n) == pytest.approx(v, abs=1e-12)

    def test_duplicate_node(self):
        with pytest.raises(DuplicateNode):
            newton_interpolate([0, 1, 1], [1, 2, 3])

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            newton_interpolate([0, 1], [1])


class TestRootFinding:
    def test_reconstructs_known_roots(self):
        roots = [1 + 2j, 1 - 2j, -3 + 0j, 0.5 + 0j]
        p = poly_from_roots(roots)
        rs = find_roots(p)
        dist, _ = assignment_distance(rs.roots, roots)
        assert dist < 1e-9
        assert max(rs.residuals) <= rs.tol

    def test_real_coefficients_conjugate_closure(self):
        p = Poly((5.0, -2.0, 1.0, 0.25, 1.0))
        rs = find_roots(p)
        found = list(rs.roots)
        for z in found:
            if abs(z.imag) > 1e-12:
                partner = min(found, key=lambda w: abs(w - z.conjugate()))
                assert abs(partner - z.conjugate()) < 1e-12

    def test_moderate_clustered_roots(self):
        roots = [complex(j, 0) for j in range(1, 11)]
        p = poly_from_roots(roots)
        rs = find_roots(p)
        dist, _ = assignment_distance(rs.roots, roots)
        assert dist < 1e-7

    def test_scale_invariance(self):
        roots = [0.5 + 1j, 0.5 - 1j, 2 + 0j]
        p = poly_from_roots(roots)
        for factor in (1e30, 1e-30):
            scaled = p.scale(factor)
            rs = find_roots(scaled)
            dist, _ = assignment_distance(rs.roots, roots)
            assert dist < 1e-9, factor

    def test_degenerate_degrees(self):
        assert find_roots(Poly((3.0,))).roots == ()
        rs = find_roots(Poly((1.0, 2.0)))
        assert len(rs.roots) == 1
        assert rs.roots[0] == pytest.approx(-0.5)
        with pytest.raises(ValueError):
            find_roots(Poly((0.0,)))

    def test_no_convergence_diagnostics(self):
        p = poly_from_roots([1 + 1j, 1 - 1j, -2 + 0j])
        with pytest.raises(NoConvergence) as exc:
            find_roots(p, max_sweeps=0, companion_fallback=False)
        assert isinstance(exc.value.diagnostics, dict)
        assert "max_residual" in exc.value.diagnostics


class TestReflectAndAssignment:
    def test_reflection_residual_detects_symmetry(self):
        # cubic with Z(s) = -Z(1-s): the minus-limit polynomial at weight 6
        h = Poly((1.0, 7 / 3, 1.0, 2 / 3)).compose_neg()
        assert poly_reflect_functional(h, -1) < 1e-15
        assert poly_reflect_functional(h, 1) > 1e-2

    def test_assignment_distance_permutation_invariant(self):
        a = [1 + 1j, 2 - 1j, -3 + 0j]
        b = [-3 + 0j, 1 + 1j, 2 - 1j]
        mx, mean = assignment_distance(a, b)
        assert mx == 0.0 and mean == 0.0

    def test_assignment_distance_known_offset(self):
        a = [0j, 1 + 0j]
        b = [0.1 + 0j, 1 + 0j]
        mx, mean = assignment_distance(a, b)
        assert mx == pytest.approx(0.1)
        assert mean == pytest.approx(0.05)

    def test_assignment_distance_length_mismatch(self):
        with pytest.raises(ValueError):
            assignment_distance([1j], [1j, 2j])
