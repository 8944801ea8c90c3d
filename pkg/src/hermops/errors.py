"""Error handling for hermops.

Domain exceptions raised by the algebra and matrix layers, plus structured
usage errors with user-friendly messages for the command-line front end.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any


class HermopsError(Exception):
    """Base class for every error raised by hermops."""


class VariableMismatch(HermopsError):
    """Raised when operands live in different numbers of variables."""

    def __init__(self, left: int, right: int) -> None:
        self.left = left
        self.right = right
        super().__init__(f"Variable-count mismatch: {left} vs {right}")


class DegreeOverflow(HermopsError):
    """Raised when an operator maps a basis monomial outside a graded space."""

    def __init__(self, monomial: tuple[int, ...], max_total_degree: int) -> None:
        self.monomial = monomial
        self.max_total_degree = max_total_degree
        super().__init__(
            f"Operator maps monomial {_render_monomial(monomial)} above total degree "
            f"{max_total_degree}"
        )


class NotNilpotent(HermopsError):
    """Raised when an exact exponential is requested for a non-degree-reducing operator."""

    def __init__(self, term: tuple[int, int, int, int]) -> None:
        self.term = term
        super().__init__(f"Term {term} does not strictly decrease total degree")


class NotInverse(HermopsError):
    """Raised when a conjugation is given a pair that are not mutual inverses."""

    def __init__(self, deviation: Any) -> None:
        self.deviation = deviation
        super().__init__(f"t_inv * t deviates from identity by {deviation}")


class DimensionMismatch(HermopsError):
    """Raised when matrices over different spaces are combined."""

    def __init__(self, left: Any, right: Any) -> None:
        self.left = left
        self.right = right
        super().__init__(f"Dimension mismatch: {left} vs {right}")


class NoSolution(HermopsError):
    """Raised when the generator repair ansatz has no exact solution."""

    def __init__(self, family: str) -> None:
        self.family = family
        super().__init__(f"No exact coefficient solution for family {family}")


class InvalidLambda(HermopsError):
    """Raised for a quadratic form that is not positive definite."""

    def __init__(self, lam: Any, reason: str) -> None:
        self.lam = lam
        self.reason = reason
        super().__init__(f"Invalid Lambda {lam}: {reason}")


class ZeroParameter(HermopsError):
    """Raised when a parameter that is divided by is zero."""

    def __init__(self, name: str) -> None:
        self.name = name
        super().__init__(f"Parameter {name} must be nonzero")


class ConsistencyError(HermopsError):
    """Raised when two independent computations of the same object disagree."""

    def __init__(self, what: str, detail: str) -> None:
        self.what = what
        self.detail = detail
        super().__init__(f"{what}: {detail}")


class InvalidRational(HermopsError):
    """Raised when a value is not an exact rational literal."""

    def __init__(self, text: str) -> None:
        self.text = text
        super().__init__(f"Not an exact rational 'p/q': {text!r}")


class InvalidPrecision(HermopsError):
    """Raised for working precisions below 15 decimal digits."""

    def __init__(self, digits: Any) -> None:
        self.digits = digits
        super().__init__(f"Precision must be an integer >= 15 digits, got {digits!r}")


def _render_monomial(monomial: tuple[int, ...]) -> str:
    names = ("x", "y")
    parts = [f"{names[i]}^{p}" for i, p in enumerate(monomial) if p]
    return "*".join(parts) if parts else "1"


class UsageErrorType(Enum):
    """Types of command-line usage errors."""

    INVALID_RATIONAL = "invalid_rational"
    INVALID_LAMBDA = "invalid_lambda"
    NOT_POSITIVE_DEFINITE = "not_positive_definite"
    INVALID_PRECISION = "invalid_precision"
    NEGATIVE_INDEX = "negative_index"
    UNKNOWN_CHECK = "unknown_check"
    INVALID_PARAMETER = "invalid_parameter"


@dataclass
class UsageError:
    """Structured usage error with type and user-friendly message."""

    error_type: UsageErrorType
    message: str
    details: str | None = None
    suggestion: str | None = None

    def format_message(self) -> str:
        """Format the error as a user-friendly message.

        Returns:
            Formatted error message with details and suggestions
        """
        parts = [self.message]

        if self.details:
            parts.append(f"Details: {self.details}")

        if self.suggestion:
            parts.append(f"Suggestion: {self.suggestion}")

        return "\n".join(parts)


class UsageFailure(Exception):
    """Carries a UsageError up to the command-line entry point."""

    def __init__(self, error: UsageError) -> None:
        self.error = error
        super().__init__(error.message)


def detect_invalid_rational(text: str) -> UsageError:
    """Create error for a value that is not a "p/q" literal.

    Args:
        text: The rejected input

    Returns:
        UsageError explaining the rational format
    """
    return UsageError(
        error_type=UsageErrorType.INVALID_RATIONAL,
        message=f"'{text}' is not an exact rational.",
        suggestion="Write exact values as integers or fractions, e.g. 2, -1/3.",
    )


def detect_invalid_lambda(text: str, details: str | None = None) -> UsageError:
    """Create error for a malformed --lambda triple.

    Args:
        text: The rejected input
        details: Parser details if any

    Returns:
        UsageError with the expected triple format
    """
    return UsageError(
        error_type=UsageErrorType.INVALID_LAMBDA,
        message=f"Cannot read Lambda from '{text}'.",
        details=details,
        suggestion="Pass --lambda sqrt_a,b,sqrt_c with exact rationals, e.g. 1,1/2,1.",
    )


def detect_not_positive_definite(text: str, reason: str) -> UsageError:
    """Create error for a Lambda violating ac - b^2 > 0, a, c > 0.

    Args:
        text: The rejected input
        reason: Which part of the condition failed

    Returns:
        UsageError citing the positive-definiteness condition
    """
    return UsageError(
        error_type=UsageErrorType.NOT_POSITIVE_DEFINITE,
        message=f"Lambda '{text}' is not positive definite.",
        details=reason,
        suggestion="The quadratic form needs ac - b^2 > 0 with a, c > 0.",
    )


def detect_invalid_precision(value: str) -> UsageError:
    """Create error for a precision below the supported minimum.

    Args:
        value: The rejected precision as given

    Returns:
        UsageError with the valid range
    """
    return UsageError(
        error_type=UsageErrorType.INVALID_PRECISION,
        message=f"Precision '{value}' is not supported.",
        suggestion="Use an integer number of decimal digits >= 15 (default 50).",
    )


def detect_negative_index(name: str, value: int) -> UsageError:
    """Create error for a negative polynomial index.

    Args:
        name: Flag name
        value: The rejected value

    Returns:
        UsageError for the index
    """
    return UsageError(
        error_type=UsageErrorType.NEGATIVE_INDEX,
        message=f"--{name} must be a non-negative integer, got {value}.",
    )


def detect_unknown_check(check_id: str, known: list[str]) -> UsageError:
    """Create error for an unknown check id.

    Args:
        check_id: The rejected check id
        known: All registered check ids

    Returns:
        UsageError listing the valid ids
    """
    return UsageError(
        error_type=UsageErrorType.UNKNOWN_CHECK,
        message=f"Unknown check '{check_id}'.",
        details="Known checks: " + ", ".join(known),
        suggestion="Run 'hermops check --list' to see every check with its anchor.",
    )


def detect_invalid_parameter(name: str, reason: str) -> UsageError:
    """Create error for any other rejected parameter.

    Args:
        name: Parameter name
        reason: Why it was rejected

    Returns:
        UsageError for the parameter
    """
    return UsageError(
        error_type=UsageErrorType.INVALID_PARAMETER,
        message=f"Invalid value for {name}.",
        details=reason,
    )
