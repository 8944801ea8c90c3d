"""Tests for normal-ordered operators and their action on polynomials.

Property 1: Action is a homomorphism - apply(a*b, p) == apply(a, apply(b, p))
Property 2: Commutator antisymmetry and the Jacobi identity
Property 3: Canonical form - equal operators have equal term maps
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hermops.errors import VariableMismatch, ZeroParameter
from hermops.weyl import (
    Poly,
    WeylOp,
    apply,
    commutator,
    const,
    dx,
    dy,
    format_op,
    format_poly,
    scalar_multiple_of,
    wo_add,
    wo_mul,
    x,
    y,
)

coeff_strategy = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def op_strategy(nvars: int, max_exp: int = 2, max_terms: int = 4) -> st.SearchStrategy[WeylOp]:
    if nvars == 1:
        key = st.tuples(st.integers(0, max_exp + 1), st.just(0), st.integers(0, max_exp + 1), st.just(0))
    else:
        key = st.tuples(*(st.integers(0, max_exp) for _ in range(4)))
    return st.dictionaries(key, coeff_strategy, max_size=max_terms).map(lambda t: WeylOp(nvars, t))


def poly_strategy(nvars: int, max_exp: int = 4) -> st.SearchStrategy[Poly]:
    ydeg = st.just(0) if nvars == 1 else st.integers(0, max_exp)
    key = st.tuples(st.integers(0, max_exp), ydeg)
    return st.dictionaries(key, coeff_strategy, max_size=5).map(lambda c: Poly(nvars, c))


nvars_strategy = st.sampled_from([1, 2])


class TestWeylOpProperties:
    """Property-based tests for operator algebra."""

    @given(st.data())
    @settings(max_examples=500, deadline=None)
    def test_action_is_homomorphism(self, data: st.DataObject) -> None:
        """Property 1: composing then applying equals applying twice."""
        nvars = data.draw(nvars_strategy)
        a = data.draw(op_strategy(nvars))
        b = data.draw(op_strategy(nvars))
        p = data.draw(poly_strategy(nvars))
        assert apply(wo_mul(a, b), p) == apply(a, apply(b, p))

    @given(st.data())
    @settings(max_examples=500, deadline=None)
    def test_commutator_antisymmetry(self, data: st.DataObject) -> None:
        """Property 2a: [a, b] = -[b, a]."""
        nvars = data.draw(nvars_strategy)
        a = data.draw(op_strategy(nvars))
        b = data.draw(op_strategy(nvars))
        assert commutator(a, b) == -commutator(b, a)

    @given(st.data())
    @settings(max_examples=500, deadline=None)
    def test_jacobi_identity(self, data: st.DataObject) -> None:
        """Property 2b: [a,[b,c]] + [b,[c,a]] + [c,[a,b]] = 0."""
        nvars = data.draw(nvars_strategy)
        a, b, c = (data.draw(op_strategy(nvars, max_exp=1, max_terms=3)) for _ in range(3))
        total = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) + commutator(c, commutator(a, b))
        assert total.is_zero

    @given(st.data())
    @settings(max_examples=200, deadline=None)
    def test_composition_is_associative(self, data: st.DataObject) -> None:
        nvars = data.draw(nvars_strategy)
        a, b, c = (data.draw(op_strategy(nvars, max_exp=1, max_terms=3)) for _ in range(3))
        assert wo_mul(wo_mul(a, b), c) == wo_mul(a, wo_mul(b, c))

    @given(st.data())
    @settings(max_examples=200, deadline=None)
    def test_composition_distributes_over_sum(self, data: st.DataObject) -> None:
        nvars = data.draw(nvars_strategy)
        a, b, c = (data.draw(op_strategy(nvars)) for _ in range(3))
        assert wo_mul(a, wo_add(b, c)) == wo_add(wo_mul(a, b), wo_mul(a, c))

    @given(op_strategy(2))
    @settings(max_examples=100)
    def test_zero_terms_are_dropped(self, op: WeylOp) -> None:
        """Property 3: canonical form never stores a zero coefficient."""
        assert all(c != 0 for c in (op - op).terms.values())
        assert (op - op).is_zero


class TestNormalOrdering:
    """Example-based tests for the Leibniz rewrite."""

    def test_canonical_commutation(self) -> None:
        assert commutator(dx(), x()) == const(1)
        assert commutator(dy(), y()) == const(1, 2)
        assert commutator(dx(2), y()).is_zero

    def test_derivative_past_coordinate(self) -> None:
        """d x = x d + 1."""
        assert dx() * x() == x() * dx() + const(1)

    def test_second_derivative_past_square(self) -> None:
        """d^2 x^2 = x^2 d^2 + 4 x d + 2."""
        lhs = (dx() * dx()) * (x() * x())
        expected = WeylOp(1, {(2, 0, 2, 0): 1, (1, 0, 1, 0): 4, (0, 0, 0, 0): 2})
        assert lhs == expected

    def test_hermite_operator_rendering(self) -> None:
        assert format_op(x() * dx() - dx() * dx()) == "x*dx - dx^2"

    def test_power_is_repeated_composition(self) -> None:
        assert dx() ** 3 == dx() * dx() * dx()
        assert x() ** 0 == const(1)

    def test_mixed_variables_rejected(self) -> None:
        with pytest.raises(VariableMismatch):
            wo_mul(dx(1), dy())
        with pytest.raises(VariableMismatch):
            WeylOp(1, {(0, 1, 0, 0): 1})

    def test_total_order_and_shifts(self) -> None:
        op = x() * x() * dx() - const(3)
        assert op.total_order == 3
        assert op.degree_shifts() == {1, 0}
        assert WeylOp.zero(2).total_order == -1


class TestApply:
    def test_derivative_of_power(self) -> None:
        assert apply(dx(), Poly.monomial(4)) == Poly.monomial(3, coeff=4)

    def test_hermite_operator_on_cubic(self) -> None:
        """(xD - D^2)(x^3 - 3x) = 3(x^3 - 3x)."""
        he3 = Poly(1, {(3, 0): 1, (1, 0): -3})
        op = x() * dx() - dx() * dx()
        assert apply(op, he3) == he3.scale(3)

    def test_call_syntax(self) -> None:
        p = Poly(2, {(1, 1): 1})
        assert (dx(2) * dy())(p) == Poly.constant(1, 2)

    def test_format_poly(self) -> None:
        assert format_poly(Poly(1, {(2, 0): 1, (0, 0): Fraction(-1, 2)})) == "x^2 - 1/2"


class TestScalarMultipleOf:
    def test_proportional(self) -> None:
        a = (dx(2) * dy()).scale(-2)
        assert scalar_multiple_of(a, dx(2) * dy()) == -2

    def test_not_proportional(self) -> None:
        assert scalar_multiple_of(x() + dx(), x() - dx()) is None
        assert scalar_multiple_of(x(), dx()) is None

    def test_zero_numerator(self) -> None:
        assert scalar_multiple_of(WeylOp.zero(1), dx()) == 0

    def test_zero_denominator_raises(self) -> None:
        with pytest.raises(ZeroParameter):
            scalar_multiple_of(dx(), WeylOp.zero(1))
