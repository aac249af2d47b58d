"""Exception types shared across the package.

Exit-code mapping used by the CLI: input and usage problems (ParseError,
ValidationError, InsufficientCoefficients, UnknownSign, TooLarge) exit 2,
numerical verification failures exit 1.
"""


class ZetaPeriodError(Exception):
    """Base class for all package errors."""


class ParseError(ZetaPeriodError):
    """Input stream is not valid JSON/CSV in the documented schema."""


class ValidationError(ZetaPeriodError):
    """Parsed newform data violates a structural constraint."""


class AmbiguousSign(ZetaPeriodError):
    """Neither candidate sign makes the truncated series self-consistent."""


class UnknownSign(ZetaPeriodError):
    """An operation needed the functional-equation sign but none is set."""


class InsufficientCoefficients(ZetaPeriodError):
    """Stored Fourier coefficients do not reach the required truncation point."""

    def __init__(self, needed: int, available: int):
        self.needed = needed
        self.available = available
        super().__init__(
            f"need coefficients a_1..a_{needed}, only {available} available"
        )


class DuplicateNode(ZetaPeriodError):
    """Interpolation nodes must be pairwise distinct."""


class NoConvergence(ZetaPeriodError):
    """Root iteration failed to reach the residual target."""

    def __init__(self, message: str, diagnostics: dict | None = None):
        self.diagnostics = diagnostics or {}
        super().__init__(message)


class ValueAtOneVanishes(ZetaPeriodError):
    """The series transform needs u(1) != 0."""


class RemainderTooLarge(ZetaPeriodError):
    """Synthetic division left a remainder beyond tolerance."""


class BracketFailure(ZetaPeriodError):
    """Bisection could not bracket the requested level."""


class TooLarge(ZetaPeriodError):
    """Requested lattice enumeration exceeds the configured budget."""


class VerificationFailure(ZetaPeriodError):
    """A mathematical consistency check failed on otherwise valid input."""
