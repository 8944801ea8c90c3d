"""Scalar values: exact rationals and high-precision floats.

Exact values are ``fractions.Fraction``; float values are ``mpmath.mpf``
evaluated under the working precision of whatever holds them.
"""

from __future__ import annotations

import re
from fractions import Fraction

import mpmath
from mpmath import mpf

from hermops.errors import InvalidPrecision, InvalidRational

Scalar = Fraction | mpf

MIN_PRECISION = 15
DEFAULT_PRECISION = 50

_RATIONAL_PATTERN = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse a "p/q" or "p" string into an exact Fraction.

    Args:
        text: Rational literal such as "-1/3" or "2".

    Returns:
        The value in lowest terms.

    Raises:
        InvalidRational: If the text is not an integer ratio or q is zero.
    """
    match = _RATIONAL_PATTERN.match(text)
    if not match:
        raise InvalidRational(text)
    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) is not None else 1
    if denominator == 0:
        raise InvalidRational(text)
    return Fraction(numerator, denominator)


def exact(value: int | Fraction | str) -> Fraction:
    """Coerce an int, Fraction or rational string to an exact Fraction."""
    if isinstance(value, bool):
        raise InvalidRational(str(value))
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise InvalidRational(repr(value))


def is_exact(value: object) -> bool:
    """True for ints and Fractions; bools are not scalars."""
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


def to_mpf(value: Scalar | int) -> mpf:
    """Promote a scalar to a float at the current working precision."""
    if isinstance(value, Fraction):
        return mpf(value.numerator) / value.denominator
    return mpf(value)


def add(a: Scalar, b: Scalar) -> Scalar:
    """Sum that stays exact when both operands are exact.

    Args:
        a: First operand.
        b: Second operand.

    Returns:
        A Fraction, or an mpf at the current working precision when either
        operand is a float.
    """
    if is_exact(a) and is_exact(b):
        return a + b
    return to_mpf(a) + to_mpf(b)


def mul(a: Scalar, b: Scalar) -> Scalar:
    """Product that stays exact when both operands are exact."""
    if is_exact(a) and is_exact(b):
        return a * b
    return to_mpf(a) * to_mpf(b)


def check_precision(digits: int) -> int:
    """Validate a working precision in decimal digits.

    Raises:
        InvalidPrecision: If fewer than 15 digits are requested.
    """
    if isinstance(digits, bool) or not isinstance(digits, int) or digits < MIN_PRECISION:
        raise InvalidPrecision(digits)
    return digits


def format_scalar(value: Scalar | int, precision: int | None = None) -> str:
    """Render a scalar losslessly for reports.

    Exact values render as "p/q" (or "p" for integers). Floats render in
    scientific notation tagged with the working precision, e.g. "1.5e-52@50".
    """
    if is_exact(value):
        value = Fraction(value)
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    digits = precision or mpmath.mp.dps
    with mpmath.workdps(digits):
        text = mpmath.nstr(value, min(digits, 17), min_fixed=0, max_fixed=0)
    return f"{text}@{digits}"
