"""Tests for exact and float scalar helpers."""

from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hermops import scalar
from hermops.errors import InvalidPrecision, InvalidRational
from hermops.scalar import add, check_precision, exact, format_scalar, is_exact, mul, parse_rational, to_mpf


class TestParseRational:
    @pytest.mark.parametrize(
        ("text", "expected"),
        [("2", Fraction(2)), ("-1/3", Fraction(-1, 3)), (" 4/6 ", Fraction(2, 3)), ("+5", Fraction(5))],
    )
    def test_valid(self, text: str, expected: Fraction) -> None:
        assert parse_rational(text) == expected

    @pytest.mark.parametrize("text", ["", "0.5", "1e3", "1/0", "a/b", "1/-2", "1//2"])
    def test_invalid(self, text: str) -> None:
        with pytest.raises(InvalidRational):
            parse_rational(text)

    @given(st.fractions(max_denominator=1000))
    @settings(max_examples=100)
    def test_format_then_parse_is_lossless(self, value: Fraction) -> None:
        assert parse_rational(format_scalar(value)) == value


class TestExact:
    def test_accepts_int_fraction_and_text(self) -> None:
        assert exact(3) == Fraction(3)
        assert exact(Fraction(1, 2)) == Fraction(1, 2)
        assert exact("5/10") == Fraction(1, 2)

    def test_rejects_floats_and_bools(self) -> None:
        with pytest.raises(InvalidRational):
            exact(0.5)
        with pytest.raises(InvalidRational):
            exact(True)


class TestArithmetic:
    def test_exact_stays_exact(self) -> None:
        assert is_exact(add(Fraction(1, 2), Fraction(1, 3)))
        assert mul(Fraction(2, 3), Fraction(3, 4)) == Fraction(1, 2)

    def test_float_promotes(self) -> None:
        with mpmath.workdps(30):
            result = add(Fraction(1, 3), mpmath.mpf(1))
            assert not is_exact(result)
            assert abs(result - mpmath.mpf(4) / 3) < mpmath.mpf("1e-28")

    def test_to_mpf_uses_working_precision(self) -> None:
        with mpmath.workdps(40):
            third = to_mpf(Fraction(1, 3))
            assert abs(third * 3 - 1) < mpmath.mpf("1e-38")

    def test_module_exports_only_used_helpers(self) -> None:
        assert {"neg", "absolute"}.isdisjoint(vars(scalar))


class TestFormatScalar:
    def test_exact_rendering(self) -> None:
        assert format_scalar(Fraction(-1, 2)) == "-1/2"
        assert format_scalar(Fraction(4)) == "4"
        assert format_scalar(0) == "0"

    def test_float_rendering_is_tagged(self) -> None:
        with mpmath.workdps(50):
            text = format_scalar(mpmath.mpf("1.5e-52"), 50)
        assert text.endswith("@50")
        assert "e-52" in text


class TestCheckPrecision:
    def test_minimum(self) -> None:
        assert check_precision(15) == 15

    @pytest.mark.parametrize("digits", [14, 0, -3, True])
    def test_rejected(self, digits: int) -> None:
        with pytest.raises(InvalidPrecision):
            check_precision(digits)
