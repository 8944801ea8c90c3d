"""Tests for graded spaces, operator matrices and matrix exponentials."""

from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from hermops.errors import DegreeOverflow, DimensionMismatch, InvalidPrecision, NotInverse, NotNilpotent
from hermops.models import Mode
from hermops.polyspace import (
    GradedSpace,
    OpMatrix,
    conjugate,
    exp_exact_nilpotent,
    exp_numeric,
    overflow_columns,
    series_order,
    to_matrix,
)
from hermops.weyl import Poly, WeylOp, apply, const, dx, dy, x

coeff_strategy = st.fractions(min_value=-4, max_value=4, max_denominator=5)


def lowering_op_strategy(nvars: int) -> st.SearchStrategy[WeylOp]:
    """Operators whose every term keeps or lowers total degree."""
    ydeg = st.just(0) if nvars == 1 else st.integers(0, 2)
    key = st.tuples(st.integers(0, 2), ydeg, st.integers(0, 2), ydeg).filter(
        lambda k: k[0] + k[1] <= k[2] + k[3]
    )
    return st.dictionaries(key, coeff_strategy, max_size=4).map(lambda t: WeylOp(nvars, t))


class TestGradedSpace:
    def test_univariate_basis(self) -> None:
        assert GradedSpace(1, 3).basis == ((0, 0), (1, 0), (2, 0), (3, 0))

    def test_bivariate_basis_is_graded_lex(self) -> None:
        assert GradedSpace(2, 2).basis == ((0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2))

    def test_dimension(self) -> None:
        assert GradedSpace(2, 8).dim == 45
        assert GradedSpace(1, 10).dim == 11

    def test_coords_round_trip(self) -> None:
        space = GradedSpace(2, 3)
        p = Poly(2, {(1, 2): Fraction(1, 3), (0, 0): -2})
        assert space.poly(space.coords(p)) == p

    def test_coords_overflow(self) -> None:
        with pytest.raises(DegreeOverflow) as excinfo:
            GradedSpace(1, 2).coords(Poly.monomial(3))
        assert excinfo.value.monomial == (3, 0)


class TestToMatrix:
    def test_raising_operator_overflows(self) -> None:
        with pytest.raises(DegreeOverflow) as excinfo:
            to_matrix(x(), GradedSpace(1, 3))
        assert excinfo.value.monomial == (3, 0)
        assert "x^3" in str(excinfo.value)

    def test_euler_operator_is_diagonal(self) -> None:
        m = to_matrix(x() * dx(), GradedSpace(1, 3))
        assert [m[k, k] for k in range(4)] == [0, 1, 2, 3]

    def test_mixed_derivative_entry(self) -> None:
        space = GradedSpace(2, 2)
        m = to_matrix(dx(2) * dy(), space)
        assert m[space.index[(0, 0)], space.index[(1, 1)]] == 1

    @given(st.data())
    @settings(max_examples=100, deadline=None)
    def test_matrix_of_composition(self, data: st.DataObject) -> None:
        """Matrices multiply like the operators compose."""
        nvars = data.draw(st.sampled_from([1, 2]))
        space = GradedSpace(nvars, 3)
        a = data.draw(lowering_op_strategy(nvars))
        b = data.draw(lowering_op_strategy(nvars))
        assert to_matrix(a * b, space) == to_matrix(a, space) @ to_matrix(b, space)

    @given(lowering_op_strategy(2))
    @settings(max_examples=100, deadline=None)
    def test_lowering_operators_are_block_upper_triangular(self, op: WeylOp) -> None:
        assert to_matrix(op, GradedSpace(2, 3)).is_block_upper_triangular()

    @given(st.data())
    @settings(max_examples=100, deadline=None)
    def test_linear_in_the_operator(self, data: st.DataObject) -> None:
        nvars = data.draw(st.sampled_from([1, 2]))
        space = GradedSpace(nvars, 3)
        a = data.draw(lowering_op_strategy(nvars))
        b = data.draw(lowering_op_strategy(nvars))
        c = data.draw(coeff_strategy)
        assert to_matrix(a + b.scale(c), space) == to_matrix(a, space) + to_matrix(b, space).scale(c)

    @given(st.data())
    @settings(max_examples=100, deadline=None)
    def test_columns_are_images_of_basis_monomials(self, data: st.DataObject) -> None:
        nvars = data.draw(st.sampled_from([1, 2]))
        space = GradedSpace(nvars, 3)
        op = data.draw(lowering_op_strategy(nvars))
        mono = Poly(nvars, {data.draw(st.sampled_from(space.basis)): 1})
        assert to_matrix(op, space).apply(mono) == apply(op, mono)

    def test_exact_matrices_are_sparse_over_rationals(self) -> None:
        m = to_matrix(dx(2) * dy(), GradedSpace(2, 4))
        assert isinstance(m.data, DomainMatrix)
        assert m.data.rep.fmt == "sparse"
        assert m.data.domain == QQ

    def test_float_matrices_use_mpmath(self) -> None:
        m = exp_numeric(to_matrix(dx(), GradedSpace(1, 3)), 30)
        assert isinstance(m.data, mpmath.matrix)

    def test_float_operator_converted_at_requested_precision(self) -> None:
        with mpmath.workdps(80):
            third = mpmath.mpf(1) / 3
        op = const(third)
        space = GradedSpace(1, 1)
        fine = to_matrix(op, space, 60)
        coarse = to_matrix(op, space, 20)
        assert (fine.precision, coarse.precision) == (60, 20)
        with mpmath.workdps(80):
            assert abs(fine[0, 0] - third) < mpmath.mpf("1e-58")
            assert abs(coarse[0, 0] - third) > mpmath.mpf("1e-40")

    def test_restricted_matrix_zeros_overflowing_columns(self) -> None:
        space = GradedSpace(1, 3)
        assert overflow_columns(x(), space) == (3,)
        assert overflow_columns(dx(), space) == ()
        m = to_matrix(x(), space, restricted=True)
        assert m[3, 2] == 1
        assert m.column(3) == [0, 0, 0, 0]

    def test_without_columns(self) -> None:
        m = to_matrix(x() * dx(), GradedSpace(1, 3)).without_columns([1, 2])
        assert dict(m.items()) == {(3, 3): 3}


class TestExactExponential:
    def test_shift_operator(self) -> None:
        """e^D x^2 = (x + 1)^2."""
        space = GradedSpace(1, 2)
        shifted = exp_exact_nilpotent(dx(), space).apply(Poly.monomial(2))
        assert shifted == Poly(1, {(2, 0): 1, (1, 0): 2, (0, 0): 1})

    def test_inverse_pair(self) -> None:
        space = GradedSpace(2, 4)
        laplacian = dx(2) * dx(2) + dy() * dy()
        forward = exp_exact_nilpotent(laplacian.scale(Fraction(-1, 2)), space)
        backward = exp_exact_nilpotent(laplacian.scale(Fraction(1, 2)), space)
        assert forward @ backward == OpMatrix.identity(space)

    def test_degree_preserving_term_rejected(self) -> None:
        with pytest.raises(NotNilpotent):
            exp_exact_nilpotent(x() * dx(), GradedSpace(1, 3))

    def test_zero_operator_gives_identity(self) -> None:
        space = GradedSpace(1, 3)
        assert exp_exact_nilpotent(WeylOp.zero(1), space) == OpMatrix.identity(space)


class TestNumericExponential:
    def test_diagonal_matrix(self) -> None:
        m = to_matrix(x() * dx(), GradedSpace(1, 3))
        result = exp_numeric(m, 30)
        assert result.mode == Mode.FLOAT
        assert result.precision == 30
        with mpmath.workdps(30):
            for k in range(4):
                assert abs(result[k, k] - mpmath.exp(k)) < mpmath.mpf("1e-25")

    def test_agrees_with_exact_series(self) -> None:
        space = GradedSpace(1, 8)
        generator = (dx() * dx()).scale(Fraction(-1, 2))
        exact = exp_exact_nilpotent(generator, space)
        numeric = exp_numeric(to_matrix(generator, space), 40)
        with mpmath.workdps(40):
            assert numeric.max_abs_diff(exact) < mpmath.mpf("1e-35")

    def test_large_norm_uses_squaring(self) -> None:
        space = GradedSpace(1, 4)
        m = to_matrix(x() * dx(), space).scale(5)
        result = exp_numeric(m, 50)
        with mpmath.workdps(50):
            expected = mpmath.exp(20)
            assert abs(result[4, 4] - expected) / expected < mpmath.mpf("1e-45")

    def test_precision_floor(self) -> None:
        with pytest.raises(InvalidPrecision):
            exp_numeric(OpMatrix.identity(GradedSpace(1, 1)), 10)

    def test_series_order_grows_with_digits(self) -> None:
        with mpmath.workdps(60):
            theta = mpmath.mpf("0.5")
            assert series_order(theta, 20) < series_order(theta, 50)


class TestConjugate:
    def test_gaussian_conjugation_of_euler(self) -> None:
        space = GradedSpace(1, 6)
        t = exp_exact_nilpotent((dx() * dx()).scale(Fraction(-1, 2)), space)
        t_inv = exp_exact_nilpotent((dx() * dx()).scale(Fraction(1, 2)), space)
        conjugated = conjugate(to_matrix(x() * dx(), space), t, t_inv)
        assert conjugated == to_matrix(x() * dx() - dx() * dx(), space)

    def test_not_inverse(self) -> None:
        space = GradedSpace(1, 3)
        t = exp_exact_nilpotent(dx(), space)
        with pytest.raises(NotInverse):
            conjugate(OpMatrix.identity(space), t, t)

    def test_dimension_mismatch(self) -> None:
        a = OpMatrix.identity(GradedSpace(1, 2))
        b = OpMatrix.identity(GradedSpace(1, 3))
        with pytest.raises(DimensionMismatch):
            conjugate(a, b, b)

    def test_float_conjugation_within_tolerance(self) -> None:
        space = GradedSpace(2, 3)
        generator = to_matrix(x(2) * dx(2) + const(1, 2), space)
        t = exp_numeric(to_matrix(dy() * dy(), space), 40)
        t_inv = exp_numeric(to_matrix(dy() * dy(), space).scale(-1), 40)
        result = conjugate(generator, t, t_inv)
        with mpmath.workdps(40):
            assert result.max_abs_diff(generator) < mpmath.mpf("1e-30")

    def test_leading_block(self) -> None:
        m = to_matrix(x() * dx() + dx(), GradedSpace(1, 3))
        block = m.leading_block(2)
        assert block.dim == 2
        assert block[0, 1] == 1
        assert block[1, 1] == 1
