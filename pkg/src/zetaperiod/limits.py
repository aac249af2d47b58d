"""Large-level limit polynomials, their critical zeros, and lattice counts.

The two comparison polynomials of even weight k are Hilbert-style binomial
sums (exact rationals throughout):

  plus  (degree k-2):  C(s+k-2, k-2) + C(s, k-2)
  minus (degree k-3):  sum_{j=0}^{k-3} C(s-j+k-3, k-3)

The minus one is the Ehrhart polynomial of the reflexive simplex
conv{e_1, ..., e_d, -(e_1+...+e_d)} in R^d with d = k-3. Zeros of either
polynomial composed with s -> -s lie on Re(s) = 1/2 at heights t solving

  sum_{j=0}^{k-3} arccot(2t/(2j+1)) = target,

targets pi, 2pi, ..., (k-3)pi for minus and the half-odd multiples
pi/2, ..., (k-5/2)pi for plus. The sum is strictly decreasing in t with
value (k-2)pi/2 at t=0; targets above that are mapped through the
reflection h(-t) = (k-2)pi - h(t), so solved heights carry a sign.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .combinat import binomial_poly
from .errors import BracketFailure, TooLarge, VerificationFailure
from .polys import Poly, assignment_distance

_MAX_BRACKET_DOUBLINGS = 60


@dataclass(frozen=True)
class HilbertPair:
    weight: int
    plus: Poly  # degree k-2, exact rationals
    minus: Poly  # degree k-3, exact rationals


def hilbert_pair(weight: int) -> HilbertPair:
    """Exact comparison polynomials for even weight >= 4 (degenerate pair

    at weight 4: 2s+1 and s^2+s+1).
    """
    k = weight
    if k % 2 != 0 or k < 4:
        raise ValueError("weight must be an even integer >= 4")
    plus = Poly(binomial_poly(k - 2, k - 2)) + Poly(binomial_poly(0, k - 2))
    minus = Poly((Fraction(0),))
    for j in range(k - 2):
        minus = minus + Poly(binomial_poly(k - 3 - j, k - 3))
    return HilbertPair(k, plus, minus)


def cotangent_sum(weight: int, t: float) -> float:
    """sum_{j=0}^{k-3} arccot(2t/(2j+1)), arccot ranging over (0, pi)."""
    return math.fsum(
        math.pi / 2.0 - math.atan(2.0 * t / (2 * j + 1)) for j in range(weight - 2)
    )


@dataclass(frozen=True)
class CotangentZeros:
    """Zeros 1/2 + i*height of the reflected limit polynomial, one per

    target level; heights are signed and strictly decreasing as the
    target increases.
    """

    weight: int
    sign: int
    targets: tuple
    heights: tuple
    residuals: tuple
    method: str = "bisection_hk"

    @property
    def zeros(self) -> tuple:
        return tuple(complex(0.5, t) for t in self.heights)


def _bisect_positive(weight: int, target: float, tol: float, t_hi: float) -> float:
    """Solve cotangent_sum(weight, t) = target for t > 0 (target < value at 0)."""
    lo, hi = 0.0, t_hi
    doublings = 0
    while cotangent_sum(weight, hi) >= target:
        hi *= 2.0
        doublings += 1
        if doublings > _MAX_BRACKET_DOUBLINGS:
            raise BracketFailure(
                f"no bracket for target {target:.6f} below t = {hi:.3e}"
            )
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if cotangent_sum(weight, mid) >= target:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-15 * max(1.0, hi):
            break
    return 0.5 * (lo + hi)


def cotangent_zeros(weight: int, sign: int, tol: float = 1e-12,
                    t_hi: float | None = None) -> CotangentZeros:
    """Bisection solver for every target level of the requested sign."""
    k = weight
    if k % 2 != 0 or k < 4:
        raise ValueError("weight must be an even integer >= 4")
    if sign == -1:
        targets = [j * math.pi for j in range(1, k - 2)]
    elif sign == 1:
        targets = [(j + 0.5) * math.pi for j in range(k - 2)]
    else:
        raise ValueError("sign must be +1 or -1")
    if t_hi is None:
        t_hi = float(k * k)
    at_zero = (k - 2) * math.pi / 2.0
    heights = []
    residuals = []
    for target in targets:
        if abs(target - at_zero) < 1e-9:
            t = 0.0
        elif target < at_zero:
            t = _bisect_positive(k, target, tol, t_hi)
        else:
            t = -_bisect_positive(k, (k - 2) * math.pi - target, tol, t_hi)
        resid = abs(cotangent_sum(k, t) - target)
        if resid > tol:
            raise BracketFailure(
                f"residual {resid:.3e} above {tol:.1e} at target {target:.6f}"
            )
        heights.append(t)
        residuals.append(resid)
    return CotangentZeros(k, sign, tuple(targets), tuple(heights), tuple(residuals))


def simplex_contains(dim: int, dilation: int, point) -> bool:
    """Exact convex-combination membership test for the dilated simplex.

    Solves for barycentric weights directly: with vertices e_i and -(1,..,1),
    lambda_0 = (m - sum x)/(d+1) and lambda_i = x_i + lambda_0 must all be
    nonnegative. Entirely rational arithmetic.
    """
    x = [Fraction(v) for v in point]
    if len(x) != dim:
        raise ValueError("point dimension mismatch")
    lam0 = (Fraction(dilation) - sum(x)) / (dim + 1)
    if lam0 < 0:
        return False
    return all(xi + lam0 >= 0 for xi in x)


def _facet_mask(total, coords, dilation, dim):
    ok = total <= dilation
    for col in coords:
        ok &= (total - (dim + 1) * col) <= dilation
    return ok


def ehrhart_count(weight: int, dilation: int, max_dim: int = 7,
                  max_dilate: int = 8) -> int:
    """|m P ∩ Z^d| for the simplex above, d = k-3, by box enumeration with

    integer facet tests. A seeded sample of rational points cross-checks the
    facet description against the exact barycentric oracle on every call.
    """
    k, m = weight, dilation
    if k % 2 != 0 or k < 4:
        raise ValueError("weight must be an even integer >= 4")
    if m < 0:
        raise ValueError("dilation must be >= 0")
    d = k - 3
    if d > max_dim or m > max_dilate:
        raise TooLarge(f"enumeration budget is d <= {max_dim}, m <= {max_dilate}")

    rng = np.random.RandomState(10_000 + 97 * k + m)
    for _ in range(20):
        pt = [Fraction(int(v), 4) for v in rng.randint(-4 * (m + 1), 4 * (m + 1) + 1, size=d)]
        total = sum(pt)
        facet = total <= m and all(total - (d + 1) * xi <= m for xi in pt)
        if facet != simplex_contains(d, m, pt):
            raise VerificationFailure(
                f"facet description disagrees with barycentric membership at {pt}"
            )

    if m == 0:
        return 1
    axis = np.arange(-m, m + 1, dtype=np.int64)
    inner = min(d, 5)
    outer = d - inner
    grids = np.meshgrid(*([axis] * inner), indexing="ij")
    cols = [g.ravel() for g in grids]
    inner_sum = np.zeros_like(cols[0])
    for c in cols:
        inner_sum = inner_sum + c
    count = 0
    for prefix in itertools.product(axis.tolist(), repeat=outer):
        total = inner_sum + int(sum(prefix))
        ok = _facet_mask(total, cols, m, d)
        for xj in prefix:
            ok &= (total - (d + 1) * xj) <= m
        count += int(np.count_nonzero(ok))
    return count


@dataclass(frozen=True)
class ConvergenceRow:
    label: str
    level: int
    max_distance: float
    mean_distance: float


@dataclass(frozen=True)
class ConvergenceStudy:
    weight: int
    sign: int
    rows: tuple
    decreasing_fraction: float
    first_to_last_decreased: bool

    def to_dict(self) -> dict:
        return {
            "weight": self.weight,
            "sign": self.sign,
            "rows": [
                {"label": r.label, "level": r.level,
                 "max_distance": r.max_distance, "mean_distance": r.mean_distance}
                for r in self.rows
            ],
            "trend": {
                "decreasing_fraction": self.decreasing_fraction,
                "first_to_last_decreased": self.first_to_last_decreased,
            },
        }


def convergence_study(forms, target_err: float | None = None) -> ConvergenceStudy:
    """Distance of each form's zeta-polynomial roots to the limit zeros,

    by level. Every member must share weight and sign and pass verification;
    the trend across levels is reported, never asserted.
    """
    from .lvalues import all_critical_values
    from .zeta import period_polynomial, verify, weighted_moments, zeta_direct, zeta_via_rv

    forms = sorted(forms, key=lambda f: f.level)
    if not forms:
        raise ValueError("need at least one newform")
    k = forms[0].weight
    sign = forms[0].sign
    if any(f.weight != k or f.sign != sign for f in forms):
        raise ValueError("convergence study needs one shared weight and sign")
    target_zeros = cotangent_zeros(k, sign).zeros
    rows = []
    for f in forms:
        lv = all_critical_values(f, target_err)
        zd = zeta_direct(weighted_moments(lv.values, k), sign, f.label)
        rf = period_polynomial(lv.values, k)
        zr = zeta_via_rv(rf, k, sign, f.label)
        report = verify(zd, partner=zr, period=rf)
        if not report.passed:
            raise VerificationFailure(f"{f.label}: verification failed, study aborted")
        dist_max, dist_mean = assignment_distance(report.roots.roots, target_zeros)
        rows.append(ConvergenceRow(f.label, f.level, dist_max, dist_mean))
    decreasing = sum(
        1 for a, b in zip(rows, rows[1:]) if b.max_distance < a.max_distance
    )
    pairs = max(1, len(rows) - 1)
    return ConvergenceStudy(
        k, sign, tuple(rows),
        decreasing / pairs if len(rows) > 1 else 1.0,
        rows[-1].max_distance < rows[0].max_distance if len(rows) > 1 else True,
    )
