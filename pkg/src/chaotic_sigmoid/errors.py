"""Exception hierarchy shared by every module in the package."""
from __future__ import annotations


class ChaoticSigmoidError(Exception):
    """Base class for all package errors."""


class DomainError(ChaoticSigmoidError, ValueError):
    """Input lies outside the domain of a map or operation."""


class DivergenceError(ChaoticSigmoidError, OverflowError):
    """An iteration or a training run left the finite range.

    ``epoch`` / ``r`` are set when the failure can be attributed.
    """

    def __init__(self, message: str, *, epoch: int | None = None, r: float | None = None):
        super().__init__(message)
        self.epoch = epoch
        self.r = r


class SingularityError(ChaoticSigmoidError, ArithmeticError):
    """log|f'(x)| requested where the derivative vanishes."""

    def __init__(self, message: str, index: int):
        super().__init__(message)
        self.index = index


class DegenerateBoundsError(ChaoticSigmoidError, ValueError):
    """alpha_max - alpha_min too small to normalise against."""


class ShapeError(ChaoticSigmoidError, ValueError):
    """Length or dimension mismatch between series / vectors."""


class ZeroVarianceError(ChaoticSigmoidError, ValueError):
    """Autocorrelation requested for a (near-)constant series."""


class DiagnosticsError(ChaoticSigmoidError):
    """Several diagnostics failed at once; all failures are kept in ``errors``."""

    def __init__(self, errors: list[Exception]):
        self.errors = list(errors)
        detail = "; ".join(f"{type(e).__name__}: {e}" for e in self.errors)
        super().__init__(f"{len(self.errors)} diagnostic(s) failed: {detail}")
