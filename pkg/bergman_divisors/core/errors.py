"""Exception hierarchy shared by all core modules.

The CLI maps these onto its exit-code contract:
    BergmanError and subclasses (input side) -> 2
    ResolutionError and DegreeError           -> 3
"""

from __future__ import annotations

from typing import Optional


class BergmanError(Exception):
    """Base class for every error raised by bergman_divisors."""


class DomainError(BergmanError, ValueError):
    """Raised when an argument lies outside a function's domain."""


class ConstraintError(DomainError):
    """Raised when a parameter leaves the constraint region of its mode."""


class PreconditionError(BergmanError):
    """Raised when a structural precondition of an operation is violated."""


class DivisorFormatError(BergmanError):
    """Raised when a divisor or targets file cannot be parsed or validated."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None) -> None:
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class SpecialOverflowError(BergmanError, OverflowError):
    """Raised when a Gamma or Beta value is not representable as a finite double."""

    def __init__(self, message: str, log_value: float) -> None:
        self.log_value = log_value
        super().__init__(message)


class ResolutionError(BergmanError):
    """Raised when a grid or quadrature is too coarse to decide soundly."""


class DegreeError(ResolutionError):
    """Raised when the truncation degree cannot reach the requested tolerance."""

    def __init__(self, message: str, suggested_degree: int) -> None:
        self.suggested_degree = suggested_degree
        super().__init__(f"{message}; try degree >= {suggested_degree}")
