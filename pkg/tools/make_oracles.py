#!/usr/bin/env python3
"""Recompute the frozen completed-L-value oracles used by the test suite.

Usage, from the repository root:

    python3 tools/make_oracles.py

The package evaluates completed values through closed-form incomplete gamma
sums with a proven truncation bound. This script takes a deliberately
different route so the numbers frozen into tests/test_lvalues.py are an
independent check: high-precision adaptive quadrature (mpmath) of the
Mellin integral

    Lambda(f, s) = N^(s/2) * integral_0^inf f(iy) y^(s-1) dy,

with f(iy) summed directly as sum a_n exp(-2 pi n y). The integrand below
y_min is dropped; by the modular bound |f(iy)| <= C y^(-k) exp(-2 pi/(N y))
the dropped mass is far below the printed precision (reported per form).

Coefficients come from the eta-product expander in make_fixtures (itself
cross-checked against the package's independent series code), extended to
enough terms for the small-y region.
"""

from __future__ import annotations

import math
import sys
from pathlib import Path

import mpmath as mp

sys.path.insert(0, str(Path(__file__).resolve().parent))
from make_fixtures import chi_quadratic, eta_quotient  # noqa: E402

DIGITS = 30


def lambda_by_quadrature(an, level: int, weight: int, s: int, y_min) -> mp.mpf:
    two_pi = 2 * mp.pi
    cutoff_log = mp.mpf(10) ** (-(DIGITS + 12))

    def f_iy(y):
        total = mp.mpf(0)
        base = mp.e ** (-two_pi * y)
        term = base
        for n, a in enumerate(an, start=1):
            if a:
                total += a * term
            term *= base
            if term < cutoff_log and n > 4:
                break
        return total

    points = [y_min, 0.05, 1.0 / math.sqrt(level), 1.0, 4.0, mp.inf]
    points = [p for i, p in enumerate(points) if i == 0 or p > points[i - 1] * 1.0001]
    integral = mp.quad(lambda y: f_iy(y) * y ** (s - 1), points)
    return mp.mpf(level) ** (mp.mpf(s) / 2) * integral


def dropped_mass_bound(an, level: int, weight: int, y_min) -> mp.mpf:
    # |f(iy)| = y^-k N^(-k/2) |f(i/(N y))| <= 2 |a_1| y^-k N^(-k/2) e^(-2 pi/(N y))
    y = mp.mpf(y_min)
    return 2 * y ** (-weight) * mp.mpf(level) ** (-mp.mpf(weight) / 2) * mp.e ** (
        -2 * mp.pi / (level * y)
    ) * y


def report(label: str, an, level: int, weight: int, s_values, y_min, n_terms: int):
    assert len(an) >= n_terms
    print(f"# {label}: level {level}, weight {weight}, "
          f"y_min {y_min}, {n_terms} series terms, "
          f"dropped-mass bound {mp.nstr(dropped_mass_bound(an, level, weight, y_min), 3)}")
    for s in s_values:
        value = lambda_by_quadrature(an[:n_terms], level, weight, s, y_min)
        print(f'    {s}: "{mp.nstr(value, 25)}",')


def main() -> int:
    mp.mp.dps = DIGITS + 15

    delta = eta_quotient([(1, 24)], 3000)
    report("1.12.a.a", delta, 1, 12, range(1, 12), 0.02, 3000)

    base5 = eta_quotient([(1, 4), (5, 4)], 3000)
    report("5.4.a.a", base5, 5, 4, (1, 2, 3), 0.01, 3000)

    base46 = eta_quotient([(2, 12)], 12000)
    chi = chi_quadratic(-3)
    tw366 = [chi(n) * a for n, a in enumerate(base46, start=1)]
    report("36.6.tw1", tw366, 36, 6, (1, 2, 3, 4, 5), 0.0015, 12000)
    return 0


if __name__ == "__main__":
    sys.exit(main())
