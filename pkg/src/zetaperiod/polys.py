"""Dense univariate polynomials over exact rationals, floats, or complexes.

Coefficients are stored ascending (index = power). Exact kinds stay exact
through arithmetic, series expansion and interpolation; this matters because
interpolation at integer nodes amplifies incoherent rounding noise in the
node values far beyond the 1e-9 agreement targets downstream, so the
rational path converts binary floats losslessly and defers rounding to the
very end.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numpy as np

from .errors import DuplicateNode, NoConvergence

_EPS = float(np.finfo(float).eps)


def _classify(coeffs) -> str:
    kind = "rational"
    for c in coeffs:
        if isinstance(c, complex):
            return "complex"
        if isinstance(c, float):
            kind = "real"
        elif not isinstance(c, (int, Fraction)):
            raise TypeError(f"unsupported coefficient type {type(c)!r}")
    return kind


@dataclass(frozen=True)
class Poly:
    """Immutable dense polynomial; exact-zero leading terms are stripped."""

    coeffs: tuple
    kind: str = field(init=False)

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        if not coeffs:
            coeffs = (0,)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "kind", _classify(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return self.coeffs == (0,)

    def __call__(self, x):
        if self.kind == "rational" and isinstance(x, (int, Fraction)):
            acc = Fraction(0)
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        acc = 0.0 if not isinstance(x, complex) else 0.0 + 0.0j
        for c in reversed(self.coeffs):
            acc = acc * x + _tofloat(c)
        return acc

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(tuple(out))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + other.scale(-1)

    def __mul__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                out[i + j] = out[i + j] + ca * cb
        return Poly(tuple(out))

    def scale(self, factor) -> "Poly":
        return Poly(tuple(c * factor for c in self.coeffs))

    def compose_neg(self) -> "Poly":
        """p(-s) with exact sign flips."""
        return Poly(tuple(c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs)))

    def to_floats(self) -> "Poly":
        return Poly(tuple(_tofloat(c) for c in self.coeffs))

    def to_fractions(self) -> "Poly":
        if self.kind == "complex":
            raise TypeError("cannot convert complex coefficients to Fraction")
        return Poly(tuple(Fraction(c) for c in self.coeffs))

    def max_abs_coeff(self) -> float:
        return max(abs(_tofloat(c)) for c in self.coeffs)


def _tofloat(c):
    if isinstance(c, Fraction):
        return float(c)
    return c


def truncate_small_leading(p: Poly, rel_tol: float = 1e-10) -> tuple[Poly, list]:
    """Drop leading coefficients below rel_tol * max|coeff|, reporting them.

    Needed where a functional-equation sign forces an exact degree fall that
    floating point only realizes approximately.
    """
    scale = p.max_abs_coeff()
    if scale == 0:
        return p, []
    coeffs = list(p.coeffs)
    dropped = []
    while len(coeffs) > 1 and abs(_tofloat(coeffs[-1])) < rel_tol * scale:
        dropped.append(coeffs.pop())
    dropped.reverse()
    return Poly(tuple(coeffs)), dropped


def series_coeffs_of_ratio(numer: Poly, pole_order: int, count: int) -> list:
    """First `count` power-series coefficients of numer(z) / (1-z)**pole_order.

    Uses 1/(1-z)^p = sum_n C(n+p-1, p-1) z^n. Exact for rational input; float
    input is converted losslessly and rounded only on return.
    """
    if pole_order < 0:
        raise ValueError("pole_order must be >= 0")
    if numer.kind == "complex":
        u = [complex(_tofloat(c)) for c in numer.coeffs]
        exact = False
    else:
        u = [Fraction(c) for c in numer.coeffs]
        exact = True
    out = []
    for n in range(count):
        acc = Fraction(0) if exact else 0.0j
        for j, cj in enumerate(u):
            if j > n:
                break
            if pole_order == 0:
                if j == n:
                    acc += cj
            else:
                acc += cj * comb(n - j + pole_order - 1, pole_order - 1)
        out.append(acc)
    if numer.kind == "rational":
        return out
    if numer.kind == "real":
        return [float(c) for c in out]
    return out


def newton_interpolate(nodes, values) -> Poly:
    """Unique interpolating polynomial through (nodes[i], values[i]).

    Divided differences; exact over rationals (floats are converted
    losslessly, and the result is rounded back to floats).
    """
    if len(nodes) != len(values):
        raise ValueError("nodes and values must have equal length")
    if len(nodes) == 0:
        raise ValueError("need at least one node")
    inexact = any(isinstance(v, float) for v in list(nodes) + list(values))
    if any(isinstance(v, complex) for v in list(nodes) + list(values)):
        xs = [complex(x) for x in nodes]
        ys = [complex(y) for y in values]
        exact = False
    else:
        xs = [Fraction(x) for x in nodes]
        ys = [Fraction(y) for y in values]
        exact = True
    n = len(xs)
    for i in range(n):
        for j in range(i + 1, n):
            if xs[i] == xs[j]:
                raise DuplicateNode(f"node {nodes[i]!r} repeats at {i} and {j}")
    dd = list(ys)
    for order in range(1, n):
        for i in range(n - 1, order - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - order])
    # assemble sum_j dd[j] * prod_{i<j}(s - x_i)
    zero = Fraction(0) if exact else 0.0j
    result = Poly((zero,))
    basis = Poly((Fraction(1) if exact else 1.0 + 0.0j,))
    for j in range(n):
        result = result + basis.scale(dd[j])
        basis = basis * Poly((-xs[j], Fraction(1) if exact else 1.0 + 0.0j))
    if exact and inexact:
        return result.to_floats()
    return result


@dataclass(frozen=True)
class RootSet:
    """Roots with per-root residuals |p(root)| / max|coeff|.

    `tol` is the residual bound actually enforced: the requested tolerance,
    floored per root by the double-precision evaluation limit
    4*deg*eps*sum_j |a_j| |root|^j / max|a|.
    """

    roots: tuple
    residuals: tuple
    method: str
    tol: float
    sweeps: int = 0


def _poly_and_deriv(coeffs: np.ndarray, z: np.ndarray):
    p = np.zeros_like(z)
    dp = np.zeros_like(z)
    for c in coeffs[::-1]:
        dp = dp * z + p
        p = p * z + c
    return p, dp


def _eval_magnitude(abs_coeffs: np.ndarray, r: np.ndarray) -> np.ndarray:
    acc = np.zeros_like(r)
    for c in abs_coeffs[::-1]:
        acc = acc * r + c
    return acc


def _aberth_sweeps(coeffs, z, max_sweeps):
    """Aberth-Ehrlich simultaneous iteration; returns (roots, sweeps used)."""
    n = len(z)
    for sweep in range(1, max_sweeps + 1):
        p, dp = _poly_and_deriv(coeffs, z)
        dp = np.where(dp == 0, _EPS, dp)
        newton = p / dp
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        mask = diff == 0
        if mask.any():
            diff = np.where(mask, _EPS, diff)
        recip = 1.0 / diff
        np.fill_diagonal(recip, 0.0)
        s = recip.sum(axis=1)
        denom = 1.0 - newton * s
        denom = np.where(denom == 0, _EPS, denom)
        w = newton / denom
        z = z - w
        if np.max(np.abs(w) / (1.0 + np.abs(z))) < 4 * _EPS:
            return z, sweep
    return z, max_sweeps


def _conjugate_close(roots: np.ndarray) -> np.ndarray:
    """Pair roots of a real polynomial into exact conjugates, snap near-real."""
    out = []
    pool = list(roots)
    pool.sort(key=lambda z: (z.real, abs(z.imag), z.imag))
    while pool:
        z = pool.pop(0)
        snap = 1e-8 * (1.0 + abs(z))
        if abs(z.imag) <= snap:
            out.append(complex(z.real, 0.0))
            continue
        best, best_d = None, None
        for i, w in enumerate(pool):
            d = abs(w - z.conjugate())
            if best_d is None or d < best_d:
                best, best_d = i, d
        if best is not None and best_d <= 1e-6 * (1.0 + abs(z)):
            w = pool.pop(best)
            avg = (z + w.conjugate()) / 2.0
            lo, hi = sorted((avg, avg.conjugate()), key=lambda v: v.imag)
            out.extend([lo, hi])
        else:
            out.append(z)  # unpaired; residual checks will flag real trouble
    return np.array(out)


def find_roots(p: Poly, tol: float = 1e-11, max_sweeps: int = 500,
               companion_fallback: bool = True) -> RootSet:
    """All complex roots of p.

    Aberth-Ehrlich iteration from a perturbed circle of initial guesses;
    falls back to companion-matrix eigenvalues (then re-polished) when the
    iteration stalls. Roots of real polynomials come back conjugate-closed
    and sorted by (Re, Im).
    """
    work = p.to_floats()
    coeffs = np.array([complex(_tofloat(c)) for c in work.coeffs])
    deg = len(coeffs) - 1
    norm = np.max(np.abs(coeffs))
    if norm == 0:
        raise ValueError("zero polynomial has no well-defined root set")
    if deg == 0:
        return RootSet((), (), "aberth", tol, 0)
    monic = coeffs / coeffs[-1]
    abs_coeffs = np.abs(coeffs)

    def accept(z):
        pv, _ = _poly_and_deriv(coeffs, z)
        resid = np.abs(pv) / norm
        floor = 4.0 * deg * _EPS * _eval_magnitude(abs_coeffs, np.abs(z)) / norm
        ok = resid <= np.maximum(tol, floor)
        return resid, floor, bool(ok.all())

    radius = 1.0 + np.max(np.abs(monic[:-1]))
    angles = 2.0 * np.pi * (np.arange(deg) + 0.37) / deg + 0.5 / deg
    z0 = 0.7 * radius * np.exp(1j * angles) + 0.02 * radius * 1j

    method = "aberth"
    z, sweeps = _aberth_sweeps(monic, z0, max_sweeps)
    resid, floor, ok = accept(z)
    if not ok:
        if not companion_fallback:
            raise NoConvergence(
                f"Aberth stalled after {sweeps} sweeps",
                {"max_residual": float(resid.max()), "tol": tol, "sweeps": sweeps},
            )
        method = "companion"
        z = np.roots(monic[::-1])
        z, extra = _aberth_sweeps(monic, z, 20)
        sweeps += extra
        resid, floor, ok = accept(z)
        if not ok:
            raise NoConvergence(
                "companion fallback did not reach the residual target",
                {"max_residual": float(resid.max()), "tol": tol, "sweeps": sweeps},
            )

    if work.kind != "complex":
        z = _conjugate_close(z)
        resid, floor, _ = accept(z)
    order = np.lexsort((z.imag, z.real))
    z = z[order]
    resid = resid[order]
    floor = floor[order]
    eff_tol = float(max(tol, floor.max()))
    return RootSet(tuple(complex(v) for v in z),
                   tuple(float(r) for r in resid), method, eff_tol, sweeps)


def poly_reflect_functional(p: Poly, eps: int) -> float:
    """Max over a fixed 8x8 grid on [-2,3]x[-2,2] of |p(s) - eps p(1-s)|,

    normalized by the max of |p| on the grid. Zero (to rounding) iff the
    reflection s -> 1-s multiplies p by eps.
    """
    if eps not in (-1, 1):
        raise ValueError("eps must be +1 or -1")
    res = 0.0
    scale = 0.0
    for re in np.linspace(-2.0, 3.0, 8):
        for im in np.linspace(-2.0, 2.0, 8):
            s = complex(re, im)
            ps = p(s)
            scale = max(scale, abs(ps))
            res = max(res, abs(ps - eps * p(1 - s)))
    if scale == 0.0:
        return 0.0
    return res / scale


def assignment_distance(a, b) -> tuple[float, float]:
    """(max, mean) Euclidean distance under the optimal pairing of two

    equal-size complex multisets.
    """
    from scipy.optimize import linear_sum_assignment

    if len(a) != len(b):
        raise ValueError(f"multiset sizes differ: {len(a)} vs {len(b)}")
    if len(a) == 0:
        return 0.0, 0.0
    av = np.array([complex(z) for z in a])
    bv = np.array([complex(z) for z in b])
    cost = np.abs(av[:, None] - bv[None, :])
    rows, cols = linear_sum_assignment(cost)
    dists = cost[rows, cols]
    return float(dists.max()), float(dists.mean())
