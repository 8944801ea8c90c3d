"""Parameter validation for command-line values."""

from dataclasses import dataclass
from typing import Any

from hermops.errors import InvalidLambda, InvalidRational
from hermops.hermite import LambdaForm
from hermops.scalar import MIN_PRECISION, parse_rational


@dataclass
class ValidationResult:
    """Result of parameter validation."""

    success: bool
    message: str
    value: Any = None


class ParameterValidator:
    """Validates rationals, Lambda triples, indices and precisions."""

    def validate_rational(self, text: str) -> ValidationResult:
        """Validate an exact rational literal.

        Args:
            text: "p" or "p/q".

        Returns:
            ValidationResult carrying the Fraction on success.
        """
        if not text or not text.strip():
            return ValidationResult(success=False, message="Value cannot be empty")
        try:
            value = parse_rational(text)
        except InvalidRational:
            return ValidationResult(success=False, message=f"'{text}' is not of the form p or p/q")
        return ValidationResult(success=True, message="Valid rational", value=value)

    def validate_lambda(self, text: str) -> ValidationResult:
        """Validate a "sqrt_a,b,sqrt_c" triple, including positive definiteness.

        Args:
            text: Comma-separated triple.

        Returns:
            ValidationResult carrying the LambdaForm on success.
        """
        if not text or not text.strip():
            return ValidationResult(success=False, message="Lambda cannot be empty")
        parts = text.split(",")
        if len(parts) != 3:
            return ValidationResult(
                success=False, message="Lambda needs three values: sqrt_a,b,sqrt_c"
            )
        for part in parts:
            if not self.validate_rational(part).success:
                return ValidationResult(success=False, message=f"'{part.strip()}' is not of the form p or p/q")
        try:
            lam = LambdaForm.parse(text)
        except InvalidLambda as exc:
            return ValidationResult(
                success=False,
                message=f"not positive definite: {exc.reason}; need ac - b^2 > 0, a, c > 0",
            )
        return ValidationResult(success=True, message="Valid Lambda", value=lam)

    def validate_index(self, value: int) -> ValidationResult:
        """Validate a polynomial index n or m."""
        if isinstance(value, bool) or not isinstance(value, int) or value < 0:
            return ValidationResult(success=False, message="Index must be a non-negative integer")
        return ValidationResult(success=True, message="Valid index", value=value)

    def validate_precision(self, value: int | str) -> ValidationResult:
        """Validate a working precision in decimal digits."""
        try:
            digits = int(value)
        except (TypeError, ValueError):
            return ValidationResult(success=False, message=f"'{value}' is not an integer")
        if digits < MIN_PRECISION:
            return ValidationResult(
                success=False, message=f"Precision must be at least {MIN_PRECISION} digits"
            )
        return ValidationResult(success=True, message="Valid precision", value=digits)
