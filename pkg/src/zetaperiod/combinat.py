"""Exact integer and rational combinatorics.

Signed Stirling numbers of the first kind s(n, m) are taken in the
convention x(x-1)...(x-n+1) = sum_m s(n, m) x^m, built from the recurrence
s(n, m) = s(n-1, m-1) - (n-1) s(n-1, m).

Everything here is exact; no floating point enters this module.
"""

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial


@lru_cache(maxsize=None)
def stirling_table(n_max: int) -> tuple[tuple[int, ...], ...]:
    """Rows 0..n_max of signed first-kind Stirling numbers, immutable."""
    assert n_max >= 0
    rows = [(1,)]
    for n in range(1, n_max + 1):
        prev = rows[n - 1]
        row = [0] * (n + 1)
        for m in range(1, n + 1):
            above = prev[m] if m <= n - 1 else 0
            row[m] = prev[m - 1] - (n - 1) * above
        rows.append(tuple(row))
    return tuple(rows)


def stirling_first(n: int, m: int) -> int:
    """Signed s(n, m); zero outside 0 <= m <= n."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if m < 0 or m > n:
        return 0
    return stirling_table(n)[n][m]


def binomial(a: int, b: int) -> int:
    """C(a, b) with the usual zero outside 0 <= b <= a."""
    if a < 0:
        raise ValueError("a must be >= 0")
    if b < 0 or b > a:
        return 0
    return comb(a, b)


def falling_factorial_poly(n: int) -> tuple[Fraction, ...]:
    """Coefficients (ascending) of x(x-1)...(x-n+1), exact."""
    coeffs = [Fraction(1)]
    for i in range(n):
        # multiply by (x - i)
        nxt = [Fraction(0)] * (len(coeffs) + 1)
        for j, c in enumerate(coeffs):
            nxt[j + 1] += c
            nxt[j] -= i * c
        coeffs = nxt
    return tuple(coeffs)


def binomial_poly(shift: int | Fraction, degree: int) -> tuple[Fraction, ...]:
    """Ascending coefficients of the degree-d polynomial C(s + shift, d),

    i.e. (s+shift)(s+shift-1)...(s+shift-d+1)/d! as exact rationals.
    """
    if degree < 0:
        raise ValueError("degree must be >= 0")
    shift = Fraction(shift)
    coeffs = [Fraction(1)]
    for i in range(degree):
        root = shift - i  # factor (s + shift - i)
        nxt = [Fraction(0)] * (len(coeffs) + 1)
        for j, c in enumerate(coeffs):
            nxt[j + 1] += c
            nxt[j] += root * c
        coeffs = nxt
    d_fact = factorial(degree)
    return tuple(c / d_fact for c in coeffs)
