"""Zeta-polynomials from the critical L-values of even-weight newforms.

The pipeline: validated Fourier coefficients -> completed L-values with a
proven truncation bound -> weighted moments and the period polynomial ->
the zeta-polynomial by two independent routes (Stirling-sum direct, and
the power-series transform of the period polynomial) -> verification of
the functional equation Z(s) = eps * Z(1-s), the critical-line property
of the roots, and root-height bounds. Alongside sit the exact limit
polynomials for each sign, a bisection solver for their zero heights, a
lattice-point counter realizing the minus polynomial as an Ehrhart count,
and level-family convergence studies.
"""

from .acceptance import CheckResult, run_acceptance
from .combinat import (
    binomial,
    binomial_poly,
    falling_factorial_poly,
    stirling_first,
    stirling_table,
)
from .errors import (
    AmbiguousSign,
    BracketFailure,
    DuplicateNode,
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
from .limits import (
    ConvergenceRow,
    ConvergenceStudy,
    CotangentZeros,
    HilbertPair,
    convergence_study,
    cotangent_sum,
    cotangent_zeros,
    ehrhart_count,
    hilbert_pair,
    simplex_contains,
)
from .lvalues import (
    CompletedLValues,
    all_critical_values,
    check_value_invariants,
    completed_lvalue,
    default_target_err,
    gamma_upper_int,
    truncation_point,
)
from .newform import (
    NewformData,
    bundled_labels,
    corpus,
    delta_coefficients,
    delta_newform,
    detect_sign,
    divisor_count,
    load_bundled,
    load_newform,
)
from .polys import (
    Poly,
    RootSet,
    assignment_distance,
    find_roots,
    newton_interpolate,
    poly_reflect_functional,
    series_coeffs_of_ratio,
    truncate_small_leading,
)
from .zeta import (
    BlochKatoVector,
    VerificationReport,
    ZetaPolynomial,
    bloch_kato_moments,
    generating_series_residual,
    period_polynomial,
    route_discrepancy,
    rv_transform,
    verify,
    weighted_moments,
    zeta_direct,
    zeta_via_rv,
)

__version__ = "0.1.0"

__all__ = [
    "AmbiguousSign",
    "BlochKatoVector",
    "BracketFailure",
    "CheckResult",
    "CompletedLValues",
    "ConvergenceRow",
    "ConvergenceStudy",
    "CotangentZeros",
    "DuplicateNode",
    "HilbertPair",
    "InsufficientCoefficients",
    "NewformData",
    "NoConvergence",
    "ParseError",
    "Poly",
    "RemainderTooLarge",
    "RootSet",
    "TooLarge",
    "UnknownSign",
    "ValidationError",
    "ValueAtOneVanishes",
    "VerificationFailure",
    "VerificationReport",
    "ZetaPeriodError",
    "ZetaPolynomial",
    "all_critical_values",
    "assignment_distance",
    "binomial",
    "binomial_poly",
    "bloch_kato_moments",
    "bundled_labels",
    "check_value_invariants",
    "completed_lvalue",
    "convergence_study",
    "corpus",
    "cotangent_sum",
    "cotangent_zeros",
    "default_target_err",
    "delta_coefficients",
    "delta_newform",
    "detect_sign",
    "divisor_count",
    "ehrhart_count",
    "falling_factorial_poly",
    "find_roots",
    "gamma_upper_int",
    "generating_series_residual",
    "hilbert_pair",
    "load_bundled",
    "load_newform",
    "newton_interpolate",
    "period_polynomial",
    "poly_reflect_functional",
    "route_discrepancy",
    "run_acceptance",
    "rv_transform",
    "series_coeffs_of_ratio",
    "simplex_contains",
    "stirling_first",
    "stirling_table",
    "truncate_small_leading",
    "truncation_point",
    "verify",
    "weighted_moments",
    "zeta_direct",
    "zeta_via_rv",
]
