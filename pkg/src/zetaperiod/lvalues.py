"""Completed critical L-values of an even-weight newform.

With Lambda(f,s) = (sqrt(N)/2pi)^s Gamma(s) L(f,s), splitting the Mellin
integral at y = t and applying the involution once gives, for 1 <= s <= k-1,

  Lambda(f,s) = sum_n a_n n^-s (sqrt(N)/2pi)^s   Gamma(s,   2 pi n t / sqrt(N))
       + eps * sum_n a_n n^(s-k) (sqrt(N)/2pi)^(k-s) Gamma(k-s, 2 pi n / (t sqrt(N)))

with upper incomplete gamma at integer first argument in closed form. The
truncation point is chosen from a proven tail overestimate:

  Gamma(m,x) <= 2 x^(m-1) e^-x        for x >= 2m,

so with |a_n| <= d(n) n^((k-1)/2) <= n^((k+1)/2) each dropped term of either
tail is at most B(n) = 4 (sqrt(N)/2pi) r^(k-2) n^((k-1)/2) e^(-c n), where
c = 2 pi min(t,1/t)/sqrt(N) and r = max(t,1/t). For n >= 2(k-1)/c
consecutive B ratios fall below e^(-c/2), so the full tail is bounded by
B(n+1) / (1 - e^(-c/2)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InsufficientCoefficients, UnknownSign
from .newform import NewformData


def gamma_upper_int(m: int, x: float) -> float:
    """Upper incomplete gamma at integer m >= 1: (m-1)! e^-x sum x^i/i!.

    Terms are accumulated smallest-to-largest; every term is positive so the
    relative error stays at a few ulps.
    """
    if not isinstance(m, int) or m < 1:
        raise ValueError("m must be an integer >= 1")
    if x < 0:
        raise ValueError("x must be >= 0")
    terms = []
    t = 1.0
    for i in range(m - 1):
        terms.append(t)
        t *= x / (i + 1)
    terms.append(t)
    terms.sort()
    s = 0.0
    for t in terms:
        s += t
    return math.factorial(m - 1) * math.exp(-x) * s


@dataclass(frozen=True)
class CompletedLValues:
    """Lambda(f,1..k-1) sharing one truncation point and error bound."""

    values: tuple
    err_bound: float
    terms_used: int


def default_target_err(level: int, weight: int) -> float:
    """About 1e-12 relative to the size of the largest completed value."""
    q = math.sqrt(level) / (2.0 * math.pi)
    return 1e-12 * q ** (weight - 1) * math.factorial(weight - 2)


def _tail_bound_at(level: int, weight: int, split: float, n: int) -> float:
    c = 2.0 * math.pi * min(split, 1.0 / split) / math.sqrt(level)
    r = max(split, 1.0 / split)
    lead = 4.0 * (math.sqrt(level) / (2.0 * math.pi)) * r ** (weight - 2)
    return lead * float(n) ** ((weight - 1) / 2.0) * math.exp(-c * n)


def truncation_point(level: int, weight: int, target_err: float,
                     split: float = 1.0) -> tuple[int, float]:
    """Smallest n_max whose proven tail overestimate is below target_err.

    Returns (n_max, tail bound at that n_max).
    """
    if target_err <= 0:
        raise ValueError("target_err must be positive")
    c = 2.0 * math.pi * min(split, 1.0 / split) / math.sqrt(level)
    geom = 1.0 - math.exp(-c / 2.0)
    n = max(1, math.ceil(2.0 * (weight - 1) / c))
    while True:
        tail = _tail_bound_at(level, weight, split, n + 1) / geom
        if tail < target_err:
            return n, tail
        n += 1


def _lambda_at(data: NewformData, s: int, n_max: int, split: float) -> float:
    n_level = data.level
    k = data.weight
    eps = data.sign
    root_q = math.sqrt(n_level) / (2.0 * math.pi)
    x_rate = 2.0 * math.pi * split / math.sqrt(n_level)
    y_rate = 2.0 * math.pi / (split * math.sqrt(n_level))
    terms = []
    for n in range(1, n_max + 1):
        a = data.coeffs[n - 1]
        if a == 0:
            continue
        terms.append(a * float(n) ** (-s) * root_q**s * gamma_upper_int(s, x_rate * n))
        terms.append(
            eps * a * float(n) ** (s - k) * root_q ** (k - s)
            * gamma_upper_int(k - s, y_rate * n)
        )
    return math.fsum(terms)


def completed_lvalue(data: NewformData, s: int, target_err: float | None = None,
                     split: float = 1.0) -> float:
    """Lambda(f,s) for integer s in [1, k-1], within target_err absolutely."""
    k = data.weight
    if not isinstance(s, int) or not 1 <= s <= k - 1:
        raise ValueError(f"s must be an integer in [1, {k - 1}]")
    if data.sign is None:
        raise UnknownSign("completed values need the functional-equation sign")
    if target_err is None:
        target_err = default_target_err(data.level, k)
    n_max, _ = truncation_point(data.level, k, target_err, split)
    if len(data.coeffs) < n_max:
        raise InsufficientCoefficients(n_max, len(data.coeffs))
    return _lambda_at(data, s, n_max, split)


def all_critical_values(data: NewformData, target_err: float | None = None,
                        split: float = 1.0) -> CompletedLValues:
    """The vector Lambda(f,1..k-1), one shared truncation point."""
    k = data.weight
    if data.sign is None:
        raise UnknownSign("completed values need the functional-equation sign")
    if target_err is None:
        target_err = default_target_err(data.level, k)
    n_max, tail = truncation_point(data.level, k, target_err, split)
    if len(data.coeffs) < n_max:
        raise InsufficientCoefficients(n_max, len(data.coeffs))
    values = tuple(_lambda_at(data, s, n_max, split) for s in range(1, k))
    return CompletedLValues(values, tail, n_max)


def check_value_invariants(lv: CompletedLValues, data: NewformData) -> list[str]:
    """Consistency findings on a completed-value vector (empty = clean).

    Checks the reflection identity, the non-negative central value, and the
    monotone growth of Lambda(f,s) from the center up to s = k-1.
    """
    k = data.weight
    eps = data.sign
    err = lv.err_bound
    values = lv.values
    problems = []
    if len(values) != k - 1:
        problems.append(f"expected {k - 1} values, found {len(values)}")
        return problems
    for j in range(k - 1):
        lhs = values[j]
        rhs = eps * values[k - 2 - j]
        if abs(lhs - rhs) > 4.0 * err:
            problems.append(
                f"reflection residual at s={j + 1}: {abs(lhs - rhs):.3e} > {4 * err:.3e}"
            )
    center = values[k // 2 - 1]
    if center < -2.0 * err:
        problems.append(f"central value {center:.3e} below -2*err")
    if eps == -1 and abs(center) > 2.0 * err:
        problems.append(f"central value {center:.3e} nonzero despite odd sign")
    prev = 0.0
    for s in range(k // 2, k):
        cur = values[s - 1]
        if cur < prev - 2.0 * err:
            problems.append(f"growth chain broken at s={s}: {cur:.6e} < {prev:.6e}")
        prev = cur
    return problems
