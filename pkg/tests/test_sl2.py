"""Tests for sl(2) generator families and the ladder representation."""

from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hermops.errors import DegreeOverflow, ZeroParameter
from hermops.hermite import STANDARD_LAMBDAS, LambdaForm, bivariate_hermite, euler_operator, gaussian_generator, u_poly
from hermops.models import Family
from hermops.polyspace import GradedSpace, conjugate, exp_numeric, to_matrix
from hermops.sl2 import (
    RELATIONS,
    LadderRep,
    bivariate_generators_literal,
    bivariate_generators_repaired,
    bivariate_h,
    check_ladder_relations,
    check_matrix_relations,
    check_relations,
    commutation_table,
    conjugated_bivariate_generators,
    conjugation_check,
    gaussian_pair,
    hermite_conjugated_generators,
    ladder_matrices,
    univariate_generators,
)
from hermops.weyl import WeylOp, apply, const, dx, dy, x, y

rational_weights = st.fractions(min_value=-6, max_value=6, max_denominator=4)
nonzero_alphas = rational_weights.filter(lambda a: a != 0)

EF, HE, HF = RELATIONS


def mixed() -> WeylOp:
    return dx(2) * dy()


class TestUnivariateFamilies:
    @given(rational_weights)
    @settings(max_examples=100, deadline=None)
    def test_univariate_relations_hold(self, n: Fraction) -> None:
        report = check_relations(univariate_generators(n))
        assert report.all_pass, report.residuals
        assert report.family == Family.UNIVARIATE_EQ7

    @given(rational_weights)
    @settings(max_examples=100, deadline=None)
    def test_hermite_conjugated_relations_hold(self, n: Fraction) -> None:
        """[X1,X2] = -X2, [X1,X3] = X3, [X2,X3] = 2 X1."""
        report = check_relations(hermite_conjugated_generators(n))
        assert report.all_pass, report.residuals

    def test_weight_zero_example(self) -> None:
        t = univariate_generators(0)
        assert commutation_table(t)["[e,f]"] == (x() * dx()).scale(2)

    def test_lowering_example(self) -> None:
        t = univariate_generators(2)
        assert commutation_table(t)["[h,e]"] == -dx()


class TestBivariateLiteral:
    def test_cartan_lowering_relation_holds(self) -> None:
        report = check_relations(bivariate_generators_literal(1))
        assert report.exact_pass[HE]

    @given(nonzero_alphas)
    @settings(max_examples=50, deadline=None)
    def test_other_relations_report_residuals(self, alpha: Fraction) -> None:
        report = check_relations(bivariate_generators_literal(alpha))
        assert not report.exact_pass[EF]
        assert not report.exact_pass[HF]
        expected = const(Fraction(1, 2), 2) + mixed().scale(alpha / 2)
        assert report.residuals[HF] == expected

    def test_zero_alpha_rejected(self) -> None:
        with pytest.raises(ZeroParameter):
            bivariate_generators_literal(0)

    @pytest.mark.parametrize("lam", STANDARD_LAMBDAS, ids=lambda lam: lam.label)
    def test_cartan_eigenvalue_on_u(self, lam: LambdaForm) -> None:
        for n in range(7):
            for m in range(7 - n):
                u = u_poly(n, m, lam)
                assert apply(bivariate_h(-lam.beta), u) == u.scale(Fraction(n + m + 1, 2))

    def test_cartan_accepts_zero_alpha(self) -> None:
        assert bivariate_h(0) == (euler_operator(2) + const(1, 2)).scale(Fraction(1, 2))


class TestBivariateRepaired:
    @given(nonzero_alphas)
    @settings(max_examples=50, deadline=None)
    def test_all_relations_hold(self, alpha: Fraction) -> None:
        report = check_relations(bivariate_generators_repaired(alpha))
        assert report.all_pass, report.residuals

    def test_repaired_f_coefficients(self) -> None:
        alpha = Fraction(2)
        f = bivariate_generators_repaired(alpha).f
        expected = (x(2) * y()).scale(1 / alpha) + euler_operator(2) + mixed().scale(alpha) + const(1, 2)
        assert f == expected

    def test_h_and_e_shared_with_literal(self) -> None:
        literal = bivariate_generators_literal(3)
        repaired = bivariate_generators_repaired(3)
        assert (literal.h, literal.e) == (repaired.h, repaired.e)


class TestConjugatedBivariate:
    @pytest.mark.parametrize("lam", STANDARD_LAMBDAS, ids=lambda lam: lam.label)
    def test_cartan_lowering_relation(self, lam: LambdaForm) -> None:
        """[h', A-] = -A-."""
        assert check_relations(conjugated_bivariate_generators(lam)).exact_pass[HE]

    def test_lowering_is_mixed_derivative(self) -> None:
        lam = LambdaForm.parse("2,1,3")
        assert conjugated_bivariate_generators(lam).e == mixed().scale(Fraction(-1, 6))

    def test_zero_b_rejected(self) -> None:
        with pytest.raises(ZeroParameter):
            conjugated_bivariate_generators(LambdaForm.parse("1,0,1"))

    @pytest.mark.parametrize("lam", STANDARD_LAMBDAS, ids=lambda lam: lam.label)
    def test_matrix_conjugation(self, lam: LambdaForm) -> None:
        residuals = conjugation_check(lam, 6)
        assert residuals == {"h'": 0, "e'": 0}

    def test_cartan_eigenvalue_on_bivariate_hermite(self) -> None:
        lam = LambdaForm.parse("1,1/2,1")
        h = conjugated_bivariate_generators(lam).h
        p = bivariate_hermite(1, 1, lam)
        assert apply(h, p) == p.scale(Fraction(3, 2))


class TestLadder:
    def test_cartan_diagonal(self) -> None:
        h, _, _ = ladder_matrices(LadderRep(Fraction(2), 3))
        assert [h[k, k] for k in range(3)] == [-1, 0, 1]

    def test_lowering_entry(self) -> None:
        _, e, _ = ladder_matrices(LadderRep(Fraction(2), 3))
        assert e.column(2) == [0, 2, 0]

    def test_unshifted_cartan(self) -> None:
        h, _, _ = ladder_matrices(LadderRep(Fraction(5), 4), restricted=True, shifted=False)
        assert [h[k, k] for k in range(4)] == [0, 1, 2, 3]

    def test_raising_overflow(self) -> None:
        with pytest.raises(DegreeOverflow):
            ladder_matrices(LadderRep(Fraction(5), 3))

    def test_finite_module_does_not_overflow(self) -> None:
        """f B^n vanishes when dim = n + 1."""
        _, _, f = ladder_matrices(LadderRep(Fraction(4), 5))
        assert f[4, 3] == -1

    @pytest.mark.parametrize("weight", [0, 1, 2, 5])
    def test_relations_on_interior_block(self, weight: int) -> None:
        for dim in range(2, 17):
            report = check_ladder_relations(LadderRep(Fraction(weight), dim))
            assert report.all_pass, (weight, dim)

    @given(rational_weights, st.integers(2, 10))
    @settings(max_examples=50, deadline=None)
    def test_cartan_spectrum(self, weight: Fraction, dim: int) -> None:
        h, _, _ = ladder_matrices(LadderRep(weight, dim), restricted=True)
        assert [h[k, k] for k in range(dim)] == [k - weight / 2 for k in range(dim)]

    def test_dimension_must_be_positive(self) -> None:
        with pytest.raises(ValueError):
            LadderRep(Fraction(0), 0)


class TestConjugationPreservesRelations:
    """A triple satisfying the relations still does after a similarity transform."""

    def _matrices(self, degree: int):
        space = GradedSpace(1, degree)
        triple = univariate_generators(degree)
        return [to_matrix(op, space) for op in (triple.h, triple.e, triple.f)]

    def test_exact_conjugation(self) -> None:
        t, t_inv = gaussian_pair(1, 8)
        h, e, f = (conjugate(m, t, t_inv) for m in self._matrices(8))
        assert check_matrix_relations(h, e, f, Family.UNIVARIATE_EQ7).all_pass

    def test_float_conjugation(self) -> None:
        space = GradedSpace(1, 8)
        t = exp_numeric(to_matrix(gaussian_generator(1), space), 40)
        t_inv = exp_numeric(to_matrix(gaussian_generator(1, +1), space), 40)
        h, e, f = (conjugate(m, t, t_inv) for m in self._matrices(8))
        with mpmath.workdps(40):
            report = check_matrix_relations(h, e, f, Family.UNIVARIATE_EQ7, tolerance=mpmath.mpf("1e-10"))
        assert report.all_pass
