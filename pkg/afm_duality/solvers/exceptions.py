"""Custom exceptions for the AFM duality toolkit."""
from __future__ import annotations

from typing import Any


class AfmError(Exception):
    """Base exception for AFM computations."""

    side: str | None = None

    def __str__(self) -> str:
        message = super().__str__()
        if self.side:
            return f"{self.side}: {message}"
        return message


class AfmParseError(AfmError, ValueError):
    """Exception for malformed textual input."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (at position {position})")
        self.position = position


class AfmInvalidParameterError(AfmError, ValueError):
    """Exception for parameters violating a type invariant."""


class AfmDomainError(AfmError, ValueError):
    """Exception for arguments outside a function's domain."""


class AfmNoBracketError(AfmError):
    """Exception when no sign change is found by the bracket scan."""


class AfmConvergenceError(AfmError):
    """Exception for solvers that did not converge."""

    def __init__(self, message: str, *values: Any) -> None:
        super().__init__(message)
        self.values = values


class AfmNonMonotoneError(AfmError):
    """Exception for functions that must be monotonic but are not."""


class AfmPrescriptionError(AfmError, ValueError):
    """Exception for invalid principal quantum number prescriptions."""


class AfmMissingParameterError(AfmError, ValueError):
    """Exception for duality relations missing a free parameter."""


class AfmExponentMismatchError(AfmError, ValueError):
    """Exception for power laws with different exponents."""


class AfmIllConditionedError(AfmError):
    """Exception for rank-deficient or ill-conditioned overlaps."""

    def __init__(self, message: str, band: int) -> None:
        super().__init__(f"{message} (band {band})")
        self.band = band


class AfmUnsupportedError(AfmError):
    """Exception for systems outside the implemented solvers."""
