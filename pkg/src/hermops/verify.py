"""Identity verification suite.

Every operator identity becomes a named, parameterized check producing a
VerificationReport. Exact checks require a zero residual; float checks
compare a relative max-norm residual against a degree-dependent tolerance.
A failing identity is a report, never an exception.
"""

from __future__ import annotations

from collections.abc import Callable, Iterator
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Any

import mpmath
from mpmath import mpf

from hermops import scalar
from hermops.errors import ConsistencyError, DegreeOverflow, HermopsError
from hermops.hermite import (
    LambdaForm,
    bivariate_hermite,
    bivariate_operator,
    gaussian_generator,
    hermite_e,
    hermite_operator,
    hermite_oracle,
    hermite_product,
    laguerre_oracle,
    laguerre_rodrigues,
    legendre_oracle,
    legendre_rodrigues,
    reduced_bivariate_operator,
    shift_expansion,
    u_poly,
)
from hermops.models import Mode, SuiteConfig, Variant, Verdict, VerificationReport
from hermops.polyspace import (
    GUARD_DIGITS,
    GradedSpace,
    OpMatrix,
    conjugate,
    exp_exact_nilpotent,
    exp_numeric,
    overflow_columns,
    to_matrix,
)
from hermops.scalar import DEFAULT_PRECISION, Scalar
from hermops.sl2 import (
    RELATIONS,
    GeneratorTriple,
    LadderRep,
    RelationReport,
    bivariate_generators_literal,
    bivariate_generators_repaired,
    bivariate_h,
    check_ladder_relations,
    check_relations,
    conjugated_bivariate_generators,
    conjugation_check,
    gaussian_pair,
    hermite_conjugated_generators,
    ladder_matrices,
    univariate_generators,
)
from hermops.weyl import Poly, WeylOp, apply, commutator, const, dx, dy, format_op, scalar_multiple_of, x

VerboseCallback = Callable[[str], None] | None

EIGEN_CHECKS = ("eq2", "eq36", "eq50", "eq55")
CONJUGATION_CHECKS = ("eq12", "eq42_49")

# the printed Cartan element reads 2b/sqrt(c) for its mixed term
EQ54_NOTE = "mixed-term coefficient -b/sqrt(ac) used; printed form has 2b/sqrt(c)"

FAMILIES = ("univariate", "hermite", "bivariate-literal", "bivariate-repaired", "bivariate-conjugated")

# residual bounds for N <= 12, N <= 24 and beyond
DEFAULT_TOLERANCES = ("1e-10", "1e-8", "1e-6")


def _emit(callback: VerboseCallback, message: str) -> None:
    if callback:
        callback(message)


def _band(degree: int, small: str, medium: str, large: str) -> mpf:
    if degree <= 12:
        return mpf(small)
    if degree <= 24:
        return mpf(medium)
    return mpf(large)


def default_tolerance(degree: int) -> mpf:
    """1e-10 up to N = 12, 1e-8 up to N = 24, 1e-6 beyond."""
    return _band(degree, *DEFAULT_TOLERANCES)


def tolerance_for(degree: int, suite: SuiteConfig) -> mpf:
    """The suite's configured residual bound for a float check on degree N."""
    return _band(degree, suite.tolerance_small, suite.tolerance_medium, suite.tolerance_large)


def _max_abs(values) -> mpf:
    return max((abs(scalar.to_mpf(v)) for v in values), default=mpf(0))


def _relative(difference: Scalar, reference: Scalar) -> mpf:
    difference = scalar.to_mpf(difference)
    reference = scalar.to_mpf(reference)
    return difference / reference if reference else difference


def _poly_residual(lhs: Poly, reference: Poly) -> mpf:
    """max |lhs - reference| / max |reference| over coefficients."""
    return _relative(_max_abs((lhs - reference).coeffs.values()), _max_abs(reference.coeffs.values()))


def _exact_report(check_id: str, params: dict[str, Any], residual: Scalar, notes: str = "", required: bool = True) -> VerificationReport:
    verdict = Verdict.PASS if residual == 0 else Verdict.FAIL
    return VerificationReport(check_id, params, Mode.EXACT, residual, Fraction(0), verdict, notes, required)


def _float_report(
    check_id: str,
    params: dict[str, Any],
    residual: mpf,
    tolerance: mpf,
    notes: str = "",
    required: bool = True,
) -> VerificationReport:
    verdict = Verdict.PASS if residual <= tolerance else Verdict.FAIL
    return VerificationReport(check_id, params, Mode.FLOAT, residual, tolerance, verdict, notes, required)


def _unmeasured(check_id: str, params: dict[str, Any], mode: Mode, verdict: Verdict, notes: str) -> VerificationReport:
    # residual is infinite so that "pass iff residual <= tolerance" still holds
    return VerificationReport(check_id, params, mode, mpmath.inf, Fraction(0), verdict, notes)


def _overflow(check_id: str, params: dict[str, Any], mode: Mode, detail: str) -> VerificationReport:
    return _unmeasured(check_id, params, mode, Verdict.OVERFLOW, detail)


# -- BCH closed form -----------------------------------------------------------


def bch_coefficient(s: Scalar) -> mpf:
    """s / (1 - e^-s), continued by its limit 1 at s = 0."""
    if s == 0:
        return mpf(1)
    s = scalar.to_mpf(s)
    return s / (1 - mpmath.exp(-s))


def bch_check(
    x_op: WeylOp,
    y_op: WeylOp,
    space: GradedSpace,
    precision: int = DEFAULT_PRECISION,
    tolerance: mpf | None = None,
    verbose_callback: VerboseCallback = None,
    check_id: str = "bch",
) -> VerificationReport:
    """Check e^X e^Y = e^(X + s/(1-e^-s) Y) with s recomputed from [X, Y].

    The scalar s is always extracted from the exact commutator; when [X, Y]
    is not a multiple of Y the verdict is not-proportional.
    """
    scalar.check_precision(precision)
    params: dict[str, Any] = {
        "x": format_op(x_op),
        "y": format_op(y_op),
        "N": space.max_total_degree,
        "nvars": space.nvars,
        "precision": precision,
    }
    bracket = commutator(x_op, y_op)
    s = Fraction(0) if y_op.is_zero else scalar_multiple_of(bracket, y_op)
    if s is None:
        _emit(verbose_callback, f"[bch] [X,Y] = {format_op(bracket)} is not a multiple of Y")
        return _unmeasured(
            check_id, params, Mode.FLOAT, Verdict.NOT_PROPORTIONAL, f"[X,Y] = {format_op(bracket)}"
        )
    params["s"] = scalar.format_scalar(s)
    try:
        mx = to_matrix(x_op, space, precision)
        my = to_matrix(y_op, space, precision)
    except DegreeOverflow as exc:
        return _overflow(check_id, params, Mode.FLOAT, str(exc))
    with mpmath.workdps(precision + GUARD_DIGITS):
        coefficient = bch_coefficient(s)
        tol = tolerance if tolerance is not None else default_tolerance(space.max_total_degree)
        lhs = exp_numeric(mx, precision) @ exp_numeric(my, precision)
        rhs = exp_numeric(mx + my.scale(coefficient, precision), precision)
        residual = _relative(lhs.max_abs_diff(rhs), rhs.max_abs())
        _emit(
            verbose_callback,
            f"[bch] s = {params['s']}, coefficient {mpmath.nstr(coefficient, 12)}, "
            f"residual {mpmath.nstr(residual, 5)}",
        )
    return _float_report(check_id, params, residual, tol)


def bch_pairs(suite: SuiteConfig) -> list[tuple[str, WeylOp, WeylOp, GradedSpace]]:
    """Operator pairs whose exact commutator is a multiple of the second operator."""
    univariate = GradedSpace(1, suite.bch_degree)
    bivariate = GradedSpace(2, suite.bivariate_bch_degree)
    lam = LambdaForm.parse(suite.lambda_samples[0])
    mixed = dx(2) * dy()
    primed = conjugated_bivariate_generators(lam)
    return [
        ("hermite-D", hermite_operator(), dx(), univariate),
        ("D-D", dx(), dx(), univariate),
        ("euler-D", x() * dx(), dx(), univariate),
        ("euler-D2", x() * dx(), dx() * dx(), univariate),
        ("bivariate-mixed", bivariate_operator(lam), mixed, bivariate),
        ("cartan-lowering", primed.h, primed.e, bivariate),
    ]


# -- Hermite identities ---------------------------------------------------------


def verify_hermite_oracle(n: int) -> VerificationReport:
    """exp(-D^2/2) x^n against the three-term recurrence."""
    diff = hermite_e(n) - hermite_oracle(n)
    return _exact_report("hermite-oracle", {"n": n}, diff.max_abs_coeff())


def verify_eq25(n: int) -> VerificationReport:
    """e^D He_n = sum_k C(n,k) He_(n-k), exactly."""
    he = hermite_e(n)
    shift = exp_exact_nilpotent(dx(), GradedSpace(1, n))
    diff = shift.apply(he) - shift_expansion(n)
    return _exact_report("eq25", {"n": n}, diff.max_abs_coeff())


def _eq31_exponent(n: int, space: GradedSpace, precision: int) -> OpMatrix:
    """Matrix of D_H - n - D/(1-e)."""
    with mpmath.workdps(precision + GUARD_DIGITS):
        coefficient = -1 / (1 - mpmath.e)
    return to_matrix(hermite_operator() - const(n), space) + to_matrix(dx(), space).scale(coefficient, precision)


def shifted_power(n: int, precision: int = DEFAULT_PRECISION) -> Poly:
    """(x + e^-1)^n with float coefficients."""
    with mpmath.workdps(precision + GUARD_DIGITS):
        e_inv = mpmath.exp(-1)
        return Poly(1, {(k, 0): comb(n, k) * e_inv ** (n - k) for k in range(n + 1)})


def _gaussian_of_shifted_power(n: int, space: GradedSpace, precision: int) -> Poly:
    gaussian = exp_exact_nilpotent(gaussian_generator(1), space).to_float(precision)
    return gaussian.apply(shifted_power(n, precision))


def verify_eq31(
    n: int,
    degree: int | None = None,
    precision: int = DEFAULT_PRECISION,
    tolerance: mpf | None = None,
) -> VerificationReport:
    """exp(-D^2/2)(e^-1 + x)^n against exp(D_H - n - D/(1-e)) He_n, relative to the left side."""
    scalar.check_precision(precision)
    degree = n + 8 if degree is None else degree
    params = {"n": n, "N": degree, "precision": precision}
    if degree < n:
        return _overflow("eq31", params, Mode.FLOAT, f"N = {degree} is below n = {n}")
    space = GradedSpace(1, degree)
    with mpmath.workdps(precision + GUARD_DIGITS):
        lhs = _gaussian_of_shifted_power(n, space, precision)
        flow = exp_numeric(_eq31_exponent(n, space, precision), precision)
        rhs = flow.apply(hermite_oracle(n))
        residual = _relative(_max_abs((lhs - rhs).coeffs.values()), _max_abs(lhs.coeffs.values()))
        tol = tolerance if tolerance is not None else default_tolerance(degree)
    return _float_report("eq31", params, residual, tol)


def verify_eq32(
    n: int,
    degree: int | None = None,
    precision: int = DEFAULT_PRECISION,
    tolerance: mpf | None = None,
) -> VerificationReport:
    """exp(-(D_H - n - D/(1-e))) exp(-D^2/2)(e^-1 + x)^n recovers He_n."""
    scalar.check_precision(precision)
    degree = n + 8 if degree is None else degree
    params = {"n": n, "N": degree, "precision": precision}
    if degree < n:
        return _overflow("eq32", params, Mode.FLOAT, f"N = {degree} is below n = {n}")
    space = GradedSpace(1, degree)
    with mpmath.workdps(precision + GUARD_DIGITS):
        lhs = _gaussian_of_shifted_power(n, space, precision)
        recovered = exp_numeric(-_eq31_exponent(n, space, precision), precision).apply(lhs)
        residual = _poly_residual(recovered, hermite_oracle(n))
        tol = tolerance if tolerance is not None else default_tolerance(degree)
    return _float_report("eq32", params, residual, tol)


def verify_eigen(check: str, n: int, m: int = 0, lam: LambdaForm | None = None) -> VerificationReport:
    """Exact eigen-relation: op(p) - lambda p must vanish.

    eq2: D_H on He_n; eq36: the bivariate operator on H_(n,m);
    eq50: the reduced operator on u_(n,m); eq55: h at alpha = -b/sqrt(ac) on u_(n,m).
    """
    if check == "eq2":
        p = hermite_e(n)
        diff = apply(hermite_operator(), p) - p.scale(n)
        return _exact_report(check, {"n": n}, diff.max_abs_coeff())
    if check not in EIGEN_CHECKS:
        raise ValueError(f"unknown eigen check {check!r}")
    if lam is None:
        raise ValueError(f"{check} needs a Lambda")
    params = {"n": n, "m": m, "lambda": lam.label}
    notes = ""
    if check == "eq36":
        op, p, eigenvalue = bivariate_operator(lam), bivariate_hermite(n, m, lam), Fraction(n + m)
    elif check == "eq50":
        op, p, eigenvalue = reduced_bivariate_operator(lam), u_poly(n, m, lam), Fraction(n + m)
    else:
        op, p, eigenvalue = bivariate_h(-lam.beta), u_poly(n, m, lam), Fraction(n + m + 1, 2)
        notes = EQ54_NOTE
    diff = apply(op, p) - p.scale(eigenvalue)
    return _exact_report(check, params, diff.max_abs_coeff(), notes)


def verify_conjugation(check: str, degree: int, lam: LambdaForm | None = None) -> VerificationReport:
    """Exact matrix equality of a Gaussian conjugate with its closed form.

    eq12: exp(-D^2/2) xD exp(D^2/2) = D_H.
    eq42_49: exp(Laplacian/2) D exp(-Laplacian/2) = x dx + y dy - 2 b/sqrt(ac) dx dy.
    """
    if check == "eq12":
        space = GradedSpace(1, degree)
        t, t_inv = gaussian_pair(1, degree)
        conjugated = conjugate(to_matrix(x() * dx(), space), t, t_inv)
        closed = to_matrix(hermite_operator(), space)
        params: dict[str, Any] = {"N": degree}
    elif check == "eq42_49":
        if lam is None:
            raise ValueError("eq42_49 needs a Lambda")
        space = GradedSpace(2, degree)
        t, t_inv = gaussian_pair(2, degree)
        conjugated = conjugate(to_matrix(bivariate_operator(lam), space), t_inv, t)
        closed = to_matrix(reduced_bivariate_operator(lam), space)
        params = {"N": degree, "lambda": lam.label}
    else:
        raise ValueError(f"unknown conjugation check {check!r}")
    return _exact_report(check, params, conjugated.max_abs_diff(closed))


def verify_prop1(degree: int, n: int | None = None) -> VerificationReport:
    """Matrix of (x - D)(D_H - n) equals the Gaussian conjugate of x^2 D - n x on degree N.

    At n = N both operators leave the space invariant. For other weights the
    top-degree columns overflow; they are dropped from both operators and
    from the comparison, which leaves the images of x^0..x^(N-1) exact
    because the Gaussian transforms never raise degree.
    """
    n = degree if n is None else n
    space = GradedSpace(1, degree)
    raising = univariate_generators(n).f
    closed_form = hermite_conjugated_generators(n).f
    dropped = overflow_columns(raising, space)
    t, t_inv = gaussian_pair(1, degree)
    conjugated = conjugate(to_matrix(raising, space, restricted=True), t, t_inv)
    closed = to_matrix(closed_form, space, restricted=True)
    residual = conjugated.without_columns(dropped).max_abs_diff(closed.without_columns(dropped))
    notes = f"columns {', '.join(map(str, dropped))} dropped" if dropped else ""
    return _exact_report("prop1", {"N": degree, "n": n}, residual, notes)


def verify_rodrigues(kind: str, n: int) -> VerificationReport:
    """Rodrigues formula against the recurrence oracle for legendre or laguerre."""
    if kind == "legendre":
        diff = legendre_rodrigues(n) - legendre_oracle(n)
    elif kind == "laguerre":
        diff = laguerre_rodrigues(n) - laguerre_oracle(n)
    else:
        raise ValueError(f"unknown Rodrigues family {kind!r}")
    return _exact_report("rodrigues", {"kind": kind, "n": n}, diff.max_abs_coeff())


# -- Theorem 1 -------------------------------------------------------------------


def theorem1_b_prime(lam: LambdaForm, variant: Variant, verbose_callback: VerboseCallback = None) -> mpf:
    """The b' substitution for each variant, at the current working precision.

    computed-s splits the bivariate operator into X = D_H(x) + D_H(y) and a
    multiple of dx dy, recomputes s from [X, dx dy], and solves
    s/(1-e^-s) kappa = -2 b/sqrt(ac) for the coefficient kappa = b'/sqrt(ac).
    """
    b = scalar.to_mpf(lam.b)
    if variant == Variant.PRINTED_1_MINUS_E:
        return 2 * b * (1 - mpmath.e)
    if variant == Variant.PRINTED_E_MINUS_1:
        return 2 * b * (mpmath.e - 1)
    x_part = hermite_operator("x", 2) + hermite_operator("y")
    mixed = dx(2) * dy()
    s = scalar_multiple_of(commutator(x_part, mixed), mixed)
    if s is None:
        raise ConsistencyError("theorem1", "[D_H(x) + D_H(y), dx dy] is not a multiple of dx dy")
    kappa = scalar.to_mpf(-2 * lam.beta) / bch_coefficient(s)
    _emit(verbose_callback, f"[theorem1] computed s = {scalar.format_scalar(s)}")
    return kappa * scalar.to_mpf(lam.sqrt_ac)


def hermite_hat(n: int, m: int, lam: LambdaForm, b_prime: mpf) -> Poly:
    """Bivariate Hermite sum with b replaced by a float b'."""
    total = Poly.zero(2)
    for k in range(min(n, m) + 1):
        coefficient = (
            (-1) ** k
            * factorial(k)
            * comb(m, k)
            * comb(n, k)
            * scalar.to_mpf(lam.sqrt_a ** (n - k))
            * b_prime**k
            * scalar.to_mpf(lam.sqrt_c ** (m - k))
        )
        total = total + hermite_product(n - k, m - k).scale(coefficient)
    return total


@lru_cache(maxsize=16)
def _bivariate_flow(lam: LambdaForm, degree: int, precision: int) -> OpMatrix:
    return exp_numeric(to_matrix(bivariate_operator(lam), GradedSpace(2, degree)), precision)


def verify_theorem1(
    n: int,
    m: int,
    lam: LambdaForm,
    variant: Variant = Variant.COMPUTED_S,
    degree: int | None = None,
    precision: int = DEFAULT_PRECISION,
    tolerance: mpf | None = None,
    verbose_callback: VerboseCallback = None,
) -> VerificationReport:
    """exp(D) H_(n,m)(Lambda') against a^(n/2) c^(m/2) e^(n+m) He_n(x) He_m(y).

    Only the computed-s variant gates a run; the two literal b' variants are
    recorded with required=False.
    """
    scalar.check_precision(precision)
    degree = n + m if degree is None else degree
    params: dict[str, Any] = {
        "n": n,
        "m": m,
        "lambda": lam.label,
        "variant": variant.value,
        "N": degree,
        "precision": precision,
    }
    required = variant == Variant.COMPUTED_S
    if degree < n + m:
        report = _overflow("theorem1", params, Mode.FLOAT, f"N = {degree} is below n + m = {n + m}")
        report.required = required
        return report
    with mpmath.workdps(precision + GUARD_DIGITS):
        b_prime = theorem1_b_prime(lam, variant, verbose_callback)
        lhs = _bivariate_flow(lam, degree, precision).apply(hermite_hat(n, m, lam, b_prime))
        scale = scalar.to_mpf(lam.sqrt_a**n * lam.sqrt_c**m) * mpmath.e ** (n + m)
        rhs = hermite_product(n, m).scale(scale)
        residual = _poly_residual(lhs, rhs)
        tol = tolerance if tolerance is not None else default_tolerance(degree)
        params["b_prime"] = mpmath.nstr(b_prime, 20)
    return _float_report("theorem1", params, residual, tol, required=required)


# -- ladder ------------------------------------------------------------------------


def verify_eq78(
    dim: int,
    n: Scalar | int = 0,
    precision: int = DEFAULT_PRECISION,
    tolerance: mpf | None = None,
    e_weight: Scalar | int = 1,
) -> VerificationReport:
    """exp(h + e) exp((1-e) e) = exp(h) with the unshifted Cartan action h B^k = k B^k.

    h and e keep the span of B^0..B^(dim-1), so the whole matrix is compared.
    e is scaled by e_weight first; the identity holds for any weight and is
    trivial at weight 0.
    """
    scalar.check_precision(precision)
    rep = LadderRep(n, dim)
    params = {"dim": dim, "n": scalar.format_scalar(rep.weight_n), "precision": precision}
    h, e, _ = ladder_matrices(rep, restricted=True, shifted=False)
    if e_weight != 1:
        params["e_weight"] = scalar.format_scalar(e_weight)
        e = e.scale(e_weight, precision)
    with mpmath.workdps(precision + GUARD_DIGITS):
        lowering = e.scale(1 - mpmath.e, precision)
        lhs = exp_numeric(h + e, precision) @ exp_numeric(lowering, precision)
        rhs = exp_numeric(h, precision)
        residual = _relative(lhs.max_abs_diff(rhs), rhs.max_abs())
        tol = tolerance if tolerance is not None else mpf(DEFAULT_TOLERANCES[0])
    return _float_report("eq78", params, residual, tol)


# -- commutation relations ---------------------------------------------------------


def _residual_size(residual: WeylOp | OpMatrix) -> Scalar:
    if isinstance(residual, OpMatrix):
        return residual.max_abs()
    return max((abs(c) for c in residual.terms.values()), default=Fraction(0))


def _render_residual(residual: WeylOp | OpMatrix) -> str:
    if isinstance(residual, OpMatrix):
        return f"max |entry| {scalar.format_scalar(residual.max_abs())}"
    return format_op(residual)


def relations_report(
    check_id: str,
    report: RelationReport,
    params: dict[str, Any],
    relations: tuple[str, ...] = RELATIONS,
    required: bool = True,
) -> VerificationReport:
    """Fold a RelationReport into one exact report; failing residuals go to notes verbatim."""
    residual = max(_residual_size(report.residuals[name]) for name in relations)
    failing = [
        f"{name}: {_render_residual(report.residuals[name])}"
        for name in relations
        if not report.exact_pass[name]
    ]
    notes = "; ".join(failing) if failing else report.notes
    return _exact_report(check_id, params, residual, notes, required)


def family_triple(family: str, n: Scalar | int = 0, alpha: Scalar | int = 1, lam: LambdaForm | None = None) -> GeneratorTriple:
    """Generator triple for a family name as accepted on the command line."""
    if family == "univariate":
        return univariate_generators(n)
    if family == "hermite":
        return hermite_conjugated_generators(n)
    if family == "bivariate-literal":
        return bivariate_generators_literal(alpha)
    if family == "bivariate-repaired":
        return bivariate_generators_repaired(alpha)
    if family == "bivariate-conjugated":
        if lam is None:
            raise ValueError("bivariate-conjugated needs a Lambda")
        return conjugated_bivariate_generators(lam)
    raise ValueError(f"unknown family {family!r}")


def verify_relations(
    check_id: str,
    family: str,
    n: Scalar | int = 0,
    alpha: Scalar | int = 1,
    lam: LambdaForm | None = None,
    required: bool = True,
) -> VerificationReport:
    triple = family_triple(family, n, alpha, lam)
    params: dict[str, Any] = {"family": triple.family.value}
    if family in ("univariate", "hermite"):
        params["n"] = scalar.format_scalar(scalar.exact(n))
    elif family == "bivariate-conjugated":
        params["lambda"] = lam.label
    else:
        params["alpha"] = scalar.format_scalar(scalar.exact(alpha))
    return relations_report(check_id, check_relations(triple), params, required=required)


def verify_eq60(lam: LambdaForm) -> VerificationReport:
    """[h', A-] = -A- with A- = e' = -b/sqrt(ac) dx dy."""
    report = check_relations(conjugated_bivariate_generators(lam))
    return relations_report("eq60", report, {"lambda": lam.label}, relations=(RELATIONS[1],))


def verify_eq56(lam: LambdaForm, degree: int) -> VerificationReport:
    """h' and e' equal the Gaussian conjugates of h and e at alpha = -b/sqrt(ac), as exact matrices."""
    residuals = conjugation_check(lam, degree)
    failing = [f"{name}: {scalar.format_scalar(r)}" for name, r in residuals.items() if r != 0]
    return _exact_report(
        "eq56", {"lambda": lam.label, "N": degree}, max(residuals.values()), "; ".join(failing)
    )


def verify_ladder(n: Scalar | int, dim: int) -> VerificationReport:
    """Exact ladder relations for weight n on dim basis vectors."""
    rep = LadderRep(n, dim)
    params = {"n": scalar.format_scalar(rep.weight_n), "dim": dim}
    return relations_report("ladder", check_ladder_relations(rep), params)


# -- registry and suite ------------------------------------------------------------


@dataclass
class CheckOptions:
    """Single-instance overrides; None means the suite grid is used."""

    n: int | None = None
    m: int | None = None
    lam: LambdaForm | None = None
    alpha: Fraction | None = None
    degree: int | None = None
    variant: Variant | None = None
    family: str | None = None


Runner = Callable[[SuiteConfig, CheckOptions, VerboseCallback], Iterator[VerificationReport]]


@dataclass(frozen=True)
class CheckSpec:
    check_id: str
    anchor: str
    summary: str
    runner: Runner


def _guarded(check_id: str, params: dict[str, Any], mode: Mode, compute: Callable[[], VerificationReport]) -> VerificationReport:
    """Run one check instance; domain errors become overflow or failing reports."""
    try:
        return compute()
    except DegreeOverflow as exc:
        return _overflow(check_id, params, mode, str(exc))
    except (HermopsError, ValueError) as exc:
        return _unmeasured(check_id, params, mode, Verdict.FAIL, str(exc))


def _indices(value: int | None, upto: int, start: int = 0) -> range | list[int]:
    return [value] if value is not None else range(start, upto + 1)


def _lambdas(suite: SuiteConfig, opts: CheckOptions) -> list[LambdaForm]:
    if opts.lam is not None:
        return [opts.lam]
    return [LambdaForm.parse(text) for text in suite.lambda_samples]


def _pairs(opts: CheckOptions, max_nm: int) -> list[tuple[int, int]]:
    """(n, m) grid by total degree, filtered by any pinned index."""
    if opts.n is not None and opts.m is not None:
        return [(opts.n, opts.m)]
    return [
        (n, m)
        for total in range(max_nm + 1)
        for n in range(total, -1, -1)
        if (opts.n is None or n == opts.n) and (opts.m is None or total - n == opts.m)
        for m in [total - n]
    ]


def _alphas(suite: SuiteConfig, opts: CheckOptions) -> list[Fraction]:
    """alpha = 1 plus -b/sqrt(ac) for every sample with b != 0."""
    if opts.alpha is not None:
        return [opts.alpha]
    return [Fraction(1)] + [-lam.beta for lam in _lambdas(suite, opts) if lam.b != 0]


def _run_hermite_oracle(suite, opts, callback):
    for n in _indices(opts.n, suite.hermite_max_n):
        yield _guarded("hermite-oracle", {"n": n}, Mode.EXACT, lambda n=n: verify_hermite_oracle(n))


def _run_eq2(suite, opts, callback):
    for n in _indices(opts.n, suite.eq2_max_n):
        yield _guarded("eq2", {"n": n}, Mode.EXACT, lambda n=n: verify_eigen("eq2", n))


def _run_bivariate_eigen(check_id: str) -> Runner:
    def run(suite, opts, callback):
        for lam in _lambdas(suite, opts):
            for n, m in _pairs(opts, suite.eigen_max_nm):
                params = {"n": n, "m": m, "lambda": lam.label}
                yield _guarded(check_id, params, Mode.EXACT, lambda n=n, m=m, lam=lam: verify_eigen(check_id, n, m, lam))

    return run


def _run_eq8(suite, opts, callback):
    family = opts.family or "univariate"
    if family.startswith("bivariate"):
        if family == "bivariate-conjugated":
            for lam in _lambdas(suite, opts):
                yield _guarded("eq8", {"family": family, "lambda": lam.label}, Mode.EXACT,
                               lambda lam=lam: verify_relations("eq8", family, lam=lam))
            return
        for alpha in _alphas(suite, opts):
            yield _guarded("eq8", {"family": family, "alpha": str(alpha)}, Mode.EXACT,
                           lambda alpha=alpha: verify_relations("eq8", family, alpha=alpha))
        return
    for n in _indices(opts.n, suite.max_nm):
        yield _guarded("eq8", {"family": family, "n": n}, Mode.EXACT,
                       lambda n=n: verify_relations("eq8", family, n=n))


def _run_eq19(suite, opts, callback):
    for n in _indices(opts.n, suite.max_nm):
        yield _guarded("eq19", {"n": n}, Mode.EXACT, lambda n=n: verify_relations("eq19", "hermite", n=n))


def _run_eq53(check_id: str, family: str, required: bool) -> Runner:
    def run(suite, opts, callback):
        for alpha in _alphas(suite, opts):
            params = {"family": family, "alpha": str(alpha)}
            yield _guarded(
                check_id, params, Mode.EXACT,
                lambda alpha=alpha: verify_relations(check_id, family, alpha=alpha, required=required),
            )

    return run


def _run_eq60(suite, opts, callback):
    for lam in _lambdas(suite, opts):
        yield _guarded("eq60", {"lambda": lam.label}, Mode.EXACT, lambda lam=lam: verify_eq60(lam))


def _run_eq56(suite, opts, callback):
    degree = opts.degree if opts.degree is not None else suite.conjugation_degree
    for lam in _lambdas(suite, opts):
        yield _guarded("eq56", {"lambda": lam.label, "N": degree}, Mode.EXACT,
                       lambda lam=lam: verify_eq56(lam, degree))


def _run_eq12(suite, opts, callback):
    degree = opts.degree if opts.degree is not None else suite.conjugation_degree
    yield _guarded("eq12", {"N": degree}, Mode.EXACT, lambda: verify_conjugation("eq12", degree))


def _run_eq42_49(suite, opts, callback):
    degree = opts.degree if opts.degree is not None else suite.conjugation_degree
    for lam in _lambdas(suite, opts):
        yield _guarded("eq42_49", {"N": degree, "lambda": lam.label}, Mode.EXACT,
                       lambda lam=lam: verify_conjugation("eq42_49", degree, lam))


def _run_prop1(suite, opts, callback):
    degree = opts.degree if opts.degree is not None else suite.prop1_degree
    for n in _indices(opts.n, degree):
        yield _guarded("prop1", {"N": degree, "n": n}, Mode.EXACT, lambda n=n: verify_prop1(degree, n))


def _run_bch_pairs(suite, opts, callback):
    for label, x_op, y_op, space in bch_pairs(suite):
        params = {"pair": label, "N": space.max_total_degree, "precision": suite.precision}

        def compute(x_op=x_op, y_op=y_op, space=space, label=label):
            report = bch_check(
                x_op, y_op, space, suite.precision, tolerance_for(space.max_total_degree, suite),
                verbose_callback=callback, check_id="bch-pairs",
            )
            report.params["pair"] = label
            return report

        yield _guarded("bch-pairs", params, Mode.FLOAT, compute)


def _run_eq25(suite, opts, callback):
    for n in _indices(opts.n, suite.eq25_max_n):
        yield _guarded("eq25", {"n": n}, Mode.EXACT, lambda n=n: verify_eq25(n))


def _run_eq31(suite, opts, callback):
    for n in _indices(opts.n, suite.eq31_max_n):
        degree = opts.degree if opts.degree is not None else n + suite.eq31_margin
        params = {"n": n, "N": degree, "precision": suite.precision}
        first = _guarded(
            "eq31", params, Mode.FLOAT,
            lambda n=n: verify_eq31(n, degree, suite.precision, tolerance_for(degree, suite)),
        )
        yield first
        wider = degree + suite.eq31_stability_step
        second = _guarded(
            "eq31", {**params, "N": wider}, Mode.FLOAT,
            lambda n=n: verify_eq31(n, wider, suite.precision, tolerance_for(wider, suite)),
        )
        yield second
        with mpmath.workdps(suite.precision + GUARD_DIGITS):
            change = abs(scalar.to_mpf(first.residual) - scalar.to_mpf(second.residual))
            tol = tolerance_for(degree, suite)
        _emit(callback, f"[eq31] n={n} residual change {mpmath.nstr(change, 5)} from N={degree} to N={wider}")
        yield _float_report(
            "eq31-stability", {"n": n, "N": degree, "N_wider": wider, "precision": suite.precision}, change, tol
        )


def _run_eq32(suite, opts, callback):
    for n in _indices(opts.n, suite.eq31_max_n):
        degree = opts.degree if opts.degree is not None else n + suite.eq31_margin
        params = {"n": n, "N": degree, "precision": suite.precision}
        yield _guarded(
            "eq32", params, Mode.FLOAT,
            lambda n=n: verify_eq32(n, degree, suite.precision, tolerance_for(degree, suite)),
        )


def _run_theorem1(suite, opts, callback):
    variants = [opts.variant] if opts.variant is not None else list(Variant)
    pairs = _pairs(opts, suite.max_nm)
    degree = opts.degree if opts.degree is not None else max([suite.max_nm, *(n + m for n, m in pairs)])
    for lam in _lambdas(suite, opts):
        for n, m in pairs:
            for variant in variants:
                params = {"n": n, "m": m, "lambda": lam.label, "variant": variant.value, "N": degree}
                yield _guarded(
                    "theorem1", params, Mode.FLOAT,
                    lambda n=n, m=m, lam=lam, variant=variant: verify_theorem1(
                        n, m, lam, variant, degree, suite.precision, tolerance_for(degree, suite), callback
                    ),
                )


def _run_ladder(suite, opts, callback):
    weights = [opts.n] if opts.n is not None else suite.ladder_weights
    for weight in weights:
        for dim in _indices(opts.degree, suite.ladder_max_dim, start=2):
            params = {"n": str(weight), "dim": dim}
            yield _guarded("ladder", params, Mode.EXACT, lambda weight=weight, dim=dim: verify_ladder(weight, dim))


def _run_eq78(suite, opts, callback):
    n = opts.n if opts.n is not None else 0
    for dim in _indices(opts.degree, suite.ladder_max_dim, start=2):
        params = {"dim": dim, "n": str(n), "precision": suite.precision}
        yield _guarded(
            "eq78", params, Mode.FLOAT,
            lambda dim=dim: verify_eq78(dim, n, suite.precision, mpf(suite.tolerance_small)),
        )


def _run_rodrigues(suite, opts, callback):
    for kind in ("legendre", "laguerre"):
        for n in _indices(opts.n, suite.rodrigues_max_n):
            yield _guarded("rodrigues", {"kind": kind, "n": n}, Mode.EXACT,
                           lambda kind=kind, n=n: verify_rodrigues(kind, n))


_SPECS = (
    CheckSpec("hermite-oracle", "Eq. 1", "exp(-D^2/2) x^n equals the recurrence He_n", _run_hermite_oracle),
    CheckSpec("eq2", "Eq. 2", "D_H He_n = n He_n", _run_eq2),
    CheckSpec("eq8", "Eq. 7-8", "sl(2) relations of a generator family (--family)", _run_eq8),
    CheckSpec("eq12", "Eq. 12", "exp(-D^2/2) xD exp(D^2/2) = D_H", _run_eq12),
    CheckSpec("eq19", "Eq. 13-14, 19", "relations of X1, X2, X3", _run_eq19),
    CheckSpec("prop1", "Eq. 14, 18", "X3 is the Gaussian conjugate of x^2 D - n x", _run_prop1),
    CheckSpec("bch-pairs", "Eq. 21-22", "closed-form BCH with recomputed s over operator pairs", _run_bch_pairs),
    CheckSpec("eq25", "Eq. 25", "e^D He_n = sum C(n,k) He_(n-k)", _run_eq25),
    CheckSpec("eq31", "Eq. 31", "Gaussian of (e^-1 + x)^n via the BCH exponent", _run_eq31),
    CheckSpec("eq32", "Eq. 32", "inverse form of Eq. 31 recovers He_n", _run_eq32),
    CheckSpec("eq36", "Eq. 36-37", "bivariate operator eigen-relation on H_(n,m)", _run_bivariate_eigen("eq36")),
    CheckSpec("eq42_49", "Eq. 42-49", "Gaussian conjugate of the bivariate operator", _run_eq42_49),
    CheckSpec("eq50", "Eq. 49-50", "reduced operator eigen-relation on u_(n,m)", _run_bivariate_eigen("eq50")),
    CheckSpec("eq53-literal", "Eq. 51-53", "relations of the printed bivariate family", _run_eq53("eq53-literal", "bivariate-literal", False)),
    CheckSpec("eq53-repaired", "Eq. 51-53", "relations with f re-solved exactly", _run_eq53("eq53-repaired", "bivariate-repaired", True)),
    CheckSpec("eq55", "Eq. 55", "h u_(n,m) = (n+m+1)/2 u_(n,m)", _run_bivariate_eigen("eq55")),
    CheckSpec("eq56", "Eq. 56-58", "h', e' are Gaussian conjugates of h, e", _run_eq56),
    CheckSpec("eq60", "Eq. 59-60", "[h', A-] = -A-", _run_eq60),
    CheckSpec("theorem1", "Theorem 1, Eq. 61-69", "exp(D) H_(n,m)(Lambda') per b' variant", _run_theorem1),
    CheckSpec("ladder", "Eq. 75", "ladder relations on the interior block", _run_ladder),
    CheckSpec("eq78", "Eq. 77-78", "exp(h + e) exp((1-e) e) = exp(h) on the ladder", _run_eq78),
    CheckSpec("rodrigues", "Eq. 73-74", "Legendre and Laguerre Rodrigues formulas", _run_rodrigues),
)

CHECKS: dict[str, CheckSpec] = {spec.check_id: spec for spec in _SPECS}


def run_check(
    check_id: str,
    config: SuiteConfig,
    options: CheckOptions | None = None,
    verbose_callback: VerboseCallback = None,
) -> list[VerificationReport]:
    """Run one registered check over its grid, or a single instance when options pin it.

    Raises:
        KeyError: If check_id is not registered.
    """
    spec = CHECKS[check_id]
    scalar.check_precision(config.precision)
    reports = []
    for report in spec.runner(config, options or CheckOptions(), verbose_callback):
        reports.append(report)
        _emit(
            verbose_callback,
            f"[{check_id}] {_describe(report.params)} {report.verdict.value}",
        )
    return reports


def _describe(params: dict[str, Any]) -> str:
    return " ".join(f"{key}={value}" for key, value in params.items() if key != "precision")


def run_suite(
    config: SuiteConfig,
    verbose_callback: VerboseCallback = None,
    check_ids: list[str] | None = None,
) -> list[VerificationReport]:
    """Every registered check in registry order; per-check errors become reports."""
    selected = check_ids or list(CHECKS)
    reports: list[VerificationReport] = []
    for index, check_id in enumerate(selected, start=1):
        batch = run_check(check_id, config, verbose_callback=verbose_callback)
        passed = sum(report.passed for report in batch)
        _emit(
            verbose_callback,
            f"[suite] {index}/{len(selected)} {check_id}: {passed}/{len(batch)} pass",
        )
        reports.extend(batch)
    return reports


def exit_status(reports: list[VerificationReport]) -> int:
    """0 when every gating report passes, 1 otherwise.

    Reports marked required=False only gate a run made up of nothing else.
    """
    gating = [r for r in reports if r.required] or reports
    return 0 if all(r.passed for r in gating) else 1
