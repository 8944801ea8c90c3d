"""sl(2,R) generator families realized by differential operators.

Each family is a triple (h, e, f) that should satisfy
[e, f] = 2h, [h, e] = -e, [h, f] = f. Checkers never raise on a failing
relation; the residual operator is reported instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import sympy

from hermops.errors import DegreeOverflow, NoSolution, VariableMismatch, ZeroParameter
from hermops.hermite import LambdaForm, euler_operator, gaussian_generator, hermite_operator
from hermops.models import Family
from hermops.polyspace import GradedSpace, OpMatrix, conjugate, exp_exact_nilpotent, to_matrix
from hermops.scalar import Scalar, exact
from hermops.weyl import WeylOp, commutator, const, dx, dy, x, y

RELATIONS = ("[e,f]=2h", "[h,e]=-e", "[h,f]=f")


@dataclass(frozen=True)
class GeneratorTriple:
    h: WeylOp
    e: WeylOp
    f: WeylOp
    family: Family

    def __post_init__(self) -> None:
        if not self.h.nvars == self.e.nvars == self.f.nvars:
            raise VariableMismatch(self.h.nvars, self.f.nvars)

    @property
    def nvars(self) -> int:
        return self.h.nvars


@dataclass
class RelationReport:
    """Residuals of the three commutation relations for one family."""

    family: Family
    residuals: dict[str, WeylOp | OpMatrix] = field(default_factory=dict)
    exact_pass: dict[str, bool] = field(default_factory=dict)
    notes: str = ""

    @property
    def all_pass(self) -> bool:
        return all(self.exact_pass.values())


@dataclass(frozen=True)
class LadderRep:
    """Index actions of h, e, f on the basis B^k, 0 <= k < dim."""

    weight_n: Fraction
    dim: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "weight_n", exact(self.weight_n))
        if self.dim < 1:
            raise ValueError("ladder dimension must be >= 1")

    def h_action(self, k: int) -> Fraction:
        return k - self.weight_n / 2

    def e_action(self, k: int) -> Fraction:
        """Coefficient of B^(k-1) in e B^k."""
        return Fraction(k)

    def f_action(self, k: int) -> Fraction:
        """Coefficient of B^(k+1) in f B^k."""
        return k - self.weight_n

    @property
    def space(self) -> GradedSpace:
        return GradedSpace(1, self.dim - 1)


def univariate_generators(n: Scalar | int | str) -> GeneratorTriple:
    """h = xD - n/2, e = D, f = x^2 D - n x."""
    n = exact(n)
    X, D = x(), dx()
    return GeneratorTriple(
        h=X * D - const(n / 2),
        e=D,
        f=X * X * D - X.scale(n),
        family=Family.UNIVARIATE_EQ7,
    )


def hermite_conjugated_generators(n: Scalar | int | str) -> GeneratorTriple:
    """X1 = D_H - n/2, X2 = D, X3 = (x - D)(D_H - n)."""
    n = exact(n)
    dh = hermite_operator("x")
    return GeneratorTriple(
        h=dh - const(n / 2),
        e=dx(),
        f=(x() - dx()) * (dh - const(n)),
        family=Family.HERMITE_EQ13,
    )


def _mixed() -> WeylOp:
    return dx(2) * dy()


def _nonzero(value: Scalar | int | str, name: str) -> Fraction:
    value = exact(value)
    if value == 0:
        raise ZeroParameter(name)
    return value


def bivariate_h(alpha: Scalar | int | str) -> WeylOp:
    """(x dx + y dy + 1)/2 + alpha dx dy; alpha may be zero here."""
    return (euler_operator(2) + const(1, 2)).scale(Fraction(1, 2)) + _mixed().scale(exact(alpha))


def _literal_h_e(alpha: Fraction) -> tuple[WeylOp, WeylOp]:
    """h and e of the bivariate family, shared by the literal and repaired triples."""
    return bivariate_h(alpha), _mixed().scale(alpha)


def bivariate_generators_literal(alpha: Scalar | int | str) -> GeneratorTriple:
    """h = (x dx + y dy + 1)/2 + a dx dy, e = a dx dy, f = xy/(2a) + (x dx + y dy)/2 + (a/4) dx dy."""
    alpha = _nonzero(alpha, "alpha")
    h, e = _literal_h_e(alpha)
    f = (
        (x(2) * y()).scale(1 / (2 * alpha))
        + euler_operator(2).scale(Fraction(1, 2))
        + _mixed().scale(alpha / 4)
    )
    return GeneratorTriple(h=h, e=e, f=f, family=Family.BIVARIATE_EQ51)


def _to_sympy(value: Fraction) -> sympy.Rational:
    return sympy.Rational(value.numerator, value.denominator)


def _from_sympy(value: sympy.Expr) -> Fraction:
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


def repair_coefficients(h: WeylOp, e: WeylOp, ansatz: list[WeylOp], family: str) -> list[Fraction]:
    """Coefficients c with f = sum c_i ansatz_i satisfying [e,f] = 2h and [h,f] = f.

    Both relations are linear in c; the system is solved exactly.

    Raises:
        NoSolution: If the system is inconsistent or underdetermined.
    """
    ef_columns = [commutator(e, op) for op in ansatz]
    hf_columns = [commutator(h, op) - op for op in ansatz]
    target = h.scale(2)
    rows: list[list[sympy.Rational]] = []
    rhs: list[sympy.Rational] = []
    ef_keys = sorted(set(target.terms).union(*(c.terms for c in ef_columns)))
    for key in ef_keys:
        rows.append([_to_sympy(c.terms.get(key, Fraction(0))) for c in ef_columns])
        rhs.append(_to_sympy(target.terms.get(key, Fraction(0))))
    hf_keys = sorted(set().union(*(c.terms for c in hf_columns)))
    for key in hf_keys:
        rows.append([_to_sympy(c.terms.get(key, Fraction(0))) for c in hf_columns])
        rhs.append(sympy.Integer(0))
    try:
        solution, params = sympy.Matrix(rows).gauss_jordan_solve(sympy.Matrix(rhs))
    except ValueError as exc:
        raise NoSolution(family) from exc
    if len(params):
        raise NoSolution(family)
    return [_from_sympy(v) for v in solution]


def bivariate_generators_repaired(alpha: Scalar | int | str) -> GeneratorTriple:
    """Literal h and e with f re-solved over span{xy, x dx + y dy, dx dy, 1}.

    Raises:
        NoSolution: If no f in the span satisfies the relations.
    """
    alpha = _nonzero(alpha, "alpha")
    h, e = _literal_h_e(alpha)
    ansatz = [x(2) * y(), euler_operator(2), _mixed(), const(1, 2)]
    coeffs = repair_coefficients(h, e, ansatz, Family.BIVARIATE_REPAIRED.value)
    f = WeylOp.zero(2)
    for c, op in zip(coeffs, ansatz):
        f = f + op.scale(c)
    return GeneratorTriple(h=h, e=e, f=f, family=Family.BIVARIATE_REPAIRED)


def conjugated_bivariate_generators(lam: LambdaForm) -> GeneratorTriple:
    """h', e', f' as the Gaussian conjugates of the bivariate family at a = -b/sqrt(ac).

    Raises:
        ZeroParameter: If b is zero (f' divides by it).
    """
    if lam.b == 0:
        raise ZeroParameter("b")
    beta = lam.beta
    hermite_sum = hermite_operator("x", 2) + hermite_operator("y") + const(1, 2)
    h = hermite_sum.scale(Fraction(1, 2)) - _mixed().scale(beta)
    e = _mixed().scale(-beta)
    f = ((x(2) - dx(2)) * (y() - dy())).scale(-1 / (2 * beta)) + h
    return GeneratorTriple(h=h, e=e, f=f, family=Family.BIVARIATE_CONJUGATED_EQ56)


def commutation_table(t: GeneratorTriple) -> dict[str, WeylOp]:
    """The three brackets [e,f], [h,e] and [h,f] of a triple."""
    return {
        "[e,f]": commutator(t.e, t.f),
        "[h,e]": commutator(t.h, t.e),
        "[h,f]": commutator(t.h, t.f),
    }


def check_relations(t: GeneratorTriple) -> RelationReport:
    """Exact residuals [e,f]-2h, [h,e]+e, [h,f]-f."""
    table = commutation_table(t)
    residuals = {
        RELATIONS[0]: table["[e,f]"] - t.h.scale(2),
        RELATIONS[1]: table["[h,e]"] + t.e,
        RELATIONS[2]: table["[h,f]"] - t.f,
    }
    return RelationReport(
        family=t.family,
        residuals=residuals,
        exact_pass={name: r.is_zero for name, r in residuals.items()},
    )


def matrix_commutator(a: OpMatrix, b: OpMatrix) -> OpMatrix:
    """ab - ba."""
    return a @ b - b @ a


def check_matrix_relations(
    h: OpMatrix,
    e: OpMatrix,
    f: OpMatrix,
    family: Family,
    block: int | None = None,
    tolerance: Scalar = 0,
) -> RelationReport:
    """Matrix residuals of the three relations, optionally on a leading block."""
    residuals = {
        RELATIONS[0]: matrix_commutator(e, f) - h.scale(2),
        RELATIONS[1]: matrix_commutator(h, e) + e,
        RELATIONS[2]: matrix_commutator(h, f) - f,
    }
    if block is not None:
        residuals = {name: r.leading_block(block) for name, r in residuals.items()}
    return RelationReport(
        family=family,
        residuals=residuals,
        exact_pass={name: r.max_abs() <= tolerance for name, r in residuals.items()},
    )


def ladder_matrices(
    rep: LadderRep, restricted: bool = False, shifted: bool = True
) -> tuple[OpMatrix, OpMatrix, OpMatrix]:
    """Matrices of h, e, f on B^0..B^(dim-1).

    f B^(dim-1) leaves the span unless its coefficient vanishes; that is a
    DegreeOverflow unless `restricted`, where the column is dropped and only
    the interior block 0..dim-2 is meaningful. With shifted=False h is the
    bare (B/B') D action k without the -n/2 term.

    Raises:
        DegreeOverflow: If f overflows and restricted is False.
    """
    dim = rep.dim
    top = dim - 1
    if not restricted and rep.f_action(top) != 0:
        raise DegreeOverflow((top, 0), top)
    h = {(k, k): rep.h_action(k) if shifted else Fraction(k) for k in range(dim)}
    e = {(k - 1, k): rep.e_action(k) for k in range(1, dim)}
    f = {(k + 1, k): rep.f_action(k) for k in range(dim - 1)}
    return tuple(OpMatrix.from_entries(rep.space, entries) for entries in (h, e, f))


def check_ladder_relations(rep: LadderRep) -> RelationReport:
    """Exact relations of the ladder matrices on the interior block 0..dim-2."""
    if rep.dim < 2:
        raise ValueError("ladder relation checks need dim >= 2")
    h, e, f = ladder_matrices(rep, restricted=True)
    report = check_matrix_relations(h, e, f, Family.LADDER, block=rep.dim - 1)
    report.notes = f"n={rep.weight_n} dim={rep.dim} interior block {rep.dim - 1}"
    return report


def gaussian_pair(nvars: int, degree: int) -> tuple[OpMatrix, OpMatrix]:
    """T = exp(-Laplacian/2) and its inverse exp(+Laplacian/2) on the graded space."""
    space = GradedSpace(nvars, degree)
    t = exp_exact_nilpotent(gaussian_generator(nvars, -1), space)
    t_inv = exp_exact_nilpotent(gaussian_generator(nvars, +1), space)
    return t, t_inv


def conjugation_check(lam: LambdaForm, degree: int) -> dict[str, Scalar]:
    """Exact max-norm of h' - T h T^-1 and e' - T e T^-1 with a = -b/sqrt(ac).

    f and f' raise total degree (their xy term) and are not representable
    on a truncated space, so only h and e are compared.
    """
    literal = bivariate_generators_literal(-lam.beta)
    primed = conjugated_bivariate_generators(lam)
    space = GradedSpace(2, degree)
    t, t_inv = gaussian_pair(2, degree)
    return {
        "h'": conjugate(to_matrix(literal.h, space), t, t_inv).max_abs_diff(to_matrix(primed.h, space)),
        "e'": conjugate(to_matrix(literal.e, space), t, t_inv).max_abs_diff(to_matrix(primed.e, space)),
    }
