"""Hermite, bivariate Hermite, Legendre and Laguerre polynomials.

Every family is produced by its operator formula and has an independent
classical-recurrence oracle to be checked against.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from hermops.errors import ConsistencyError, InvalidLambda
from hermops.models import Convention
from hermops.scalar import exact, parse_rational
from hermops.weyl import Poly, WeylOp, apply, const, dx, dy, x, y

# (1/n!)(D - 1)^n x^n reproduces the classical L_n with no sign flip
LAGUERRE_SIGN = 1
LAGUERRE_CONVENTION = "as-printed"


@dataclass(frozen=True)
class LambdaForm:
    """Positive-definite form [[a, b], [b, c]] given through sqrt(a), b, sqrt(c)."""

    sqrt_a: Fraction
    b: Fraction
    sqrt_c: Fraction

    def __post_init__(self) -> None:
        for name in ("sqrt_a", "b", "sqrt_c"):
            object.__setattr__(self, name, exact(getattr(self, name)))
        if self.sqrt_a <= 0 or self.sqrt_c <= 0:
            raise InvalidLambda(self.label, "sqrt_a and sqrt_c must be positive (a, c > 0)")
        if self.a * self.c - self.b * self.b <= 0:
            raise InvalidLambda(self.label, "ac - b^2 must be positive")

    @classmethod
    def parse(cls, text: str) -> LambdaForm:
        """Parse "sqrt_a,b,sqrt_c" with exact rational components."""
        parts = text.split(",")
        if len(parts) != 3:
            raise InvalidLambda(text, "expected three comma-separated values sqrt_a,b,sqrt_c")
        return cls(*(parse_rational(p) for p in parts))

    @property
    def a(self) -> Fraction:
        return self.sqrt_a * self.sqrt_a

    @property
    def c(self) -> Fraction:
        return self.sqrt_c * self.sqrt_c

    @property
    def sqrt_ac(self) -> Fraction:
        return self.sqrt_a * self.sqrt_c

    @property
    def beta(self) -> Fraction:
        """b / sqrt(ac), the mixed-derivative coefficient of the bivariate operators."""
        return self.b / self.sqrt_ac

    @property
    def label(self) -> str:
        """"sqrt_a,b,sqrt_c" as accepted by parse."""
        return ",".join(_fmt(v) for v in (self.sqrt_a, self.b, self.sqrt_c))


def _fmt(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


STANDARD_LAMBDAS = (
    LambdaForm(Fraction(1), Fraction(1, 2), Fraction(1)),
    LambdaForm(Fraction(2), Fraction(1), Fraction(3)),
    LambdaForm(Fraction(1), Fraction(-1, 3), Fraction(2)),
)


def hermite_operator(var: str = "x", nvars: int | None = None) -> WeylOp:
    """The Hermite differential operator x D - D^2 in the chosen variable."""
    if var == "x":
        n = nvars or 1
        return x(n) * dx(n) - dx(n) * dx(n)
    if var == "y":
        return y() * dy() - dy() * dy()
    raise ValueError(f"unknown variable {var!r}")


def euler_operator(nvars: int = 2) -> WeylOp:
    """x dx (+ y dy)."""
    op = x(nvars) * dx(nvars)
    if nvars == 2:
        op = op + y() * dy()
    return op


def bivariate_operator(lam: LambdaForm) -> WeylOp:
    """D_H(x) + D_H(y) - 2 b/sqrt(ac) dx dy, whose eigenfunctions are H_{n,m}."""
    return (
        hermite_operator("x", 2)
        + hermite_operator("y")
        - (dx(2) * dy()).scale(2 * lam.beta)
    )


def reduced_bivariate_operator(lam: LambdaForm) -> WeylOp:
    """x dx + y dy - 2 b/sqrt(ac) dx dy, whose eigenfunctions are u_{n,m}."""
    return euler_operator(2) - (dx(2) * dy()).scale(2 * lam.beta)


def gaussian_generator(nvars: int = 1, sign: int = -1) -> WeylOp:
    """sign * (dx^2 [+ dy^2]) / 2; sign -1 maps monomials to Hermite polynomials."""
    op = dx(nvars) * dx(nvars)
    if nvars == 2:
        op = op + dy() * dy()
    return op.scale(Fraction(sign, 2))


def gaussian_transform(p: Poly, sign: int = -1) -> Poly:
    """Exact action of exp(sign * Laplacian / 2) on a polynomial.

    The series sum_k G^k p / k! stops once G^k p vanishes, after at most
    deg(p) / 2 terms.
    """
    generator = gaussian_generator(p.nvars, sign)
    total = term = p
    for k in range(1, p.total_degree // 2 + 1):
        term = apply(generator, term).scale(Fraction(1, k))
        total = total + term
    return total


def embed(p: Poly, var: str) -> Poly:
    """View a univariate polynomial as a bivariate one in x or y."""
    if var == "x":
        return Poly(2, {(i, 0): c for (i, _), c in p.coeffs.items()})
    return Poly(2, {(0, i): c for (i, _), c in p.coeffs.items()})


def hermite_e(n: int) -> Poly:
    """Probabilists' Hermite polynomial as exp(-D^2/2) x^n."""
    _check_index(n)
    return gaussian_transform(Poly.monomial(n))


@lru_cache(maxsize=None)
def hermite_oracle(n: int) -> Poly:
    """He_{k+1} = x He_k - k He_{k-1}."""
    _check_index(n)
    if n == 0:
        return Poly.constant(1)
    if n == 1:
        return Poly.monomial(1)
    return Poly.monomial(1) * hermite_oracle(n - 1) - hermite_oracle(n - 2).scale(n - 1)


def hermite_product(n: int, m: int) -> Poly:
    """He_n(x) He_m(y)."""
    return embed(hermite_oracle(n), "x") * embed(hermite_oracle(m), "y")


def shift_expansion(n: int) -> Poly:
    """sum_k C(n, k) He_{n-k}, the expansion of He_n(x + 1)."""
    _check_index(n)
    total = Poly.zero(1)
    for k in range(n + 1):
        total = total + hermite_oracle(n - k).scale(comb(n, k))
    return total


def _pair_coeff(n: int, m: int, k: int, lam: LambdaForm) -> Fraction:
    return (
        (-1) ** k
        * factorial(k)
        * comb(m, k)
        * comb(n, k)
        * lam.sqrt_a ** (n - k)
        * lam.b**k
        * lam.sqrt_c ** (m - k)
    )


def u_poly(n: int, m: int, lam: LambdaForm, convention: Convention = Convention.N_WITH_X) -> Poly:
    """Monomial-basis preimage u_{n,m} of the bivariate Hermite polynomial.

    With the default convention the x exponent is n - k, pairing n with x and
    sqrt(a) as the direct sum does; M_WITH_X swaps the exponents only.
    """
    _check_index(n)
    _check_index(m)
    coeffs = {}
    for k in range(min(n, m) + 1):
        mono = (n - k, m - k) if convention == Convention.N_WITH_X else (m - k, n - k)
        coeffs[mono] = _pair_coeff(n, m, k, lam)
    return Poly(2, coeffs)


def bivariate_hermite_direct(n: int, m: int, lam: LambdaForm) -> Poly:
    """sum_k (-1)^k k! C(m,k) C(n,k) a^((n-k)/2) b^k c^((m-k)/2) He_{n-k}(x) He_{m-k}(y)."""
    _check_index(n)
    _check_index(m)
    total = Poly.zero(2)
    for k in range(min(n, m) + 1):
        total = total + hermite_product(n - k, m - k).scale(_pair_coeff(n, m, k, lam))
    return total


def bivariate_hermite_transform(n: int, m: int, lam: LambdaForm) -> Poly:
    """exp(-(dx^2 + dy^2)/2) u_{n,m}."""
    return gaussian_transform(u_poly(n, m, lam))


def bivariate_hermite(n: int, m: int, lam: LambdaForm) -> Poly:
    """Bivariate Hermite polynomial, computed by both the direct sum and the transform.

    Raises:
        ConsistencyError: If the two constructions disagree.
    """
    direct = bivariate_hermite_direct(n, m, lam)
    transformed = bivariate_hermite_transform(n, m, lam)
    if direct != transformed:
        raise ConsistencyError(
            f"bivariate Hermite ({n},{m}) at Lambda {lam.label}",
            "direct sum and Gaussian transform differ",
        )
    return direct


def legendre_rodrigues(n: int) -> Poly:
    """(1 / (2^n n!)) d^n/dx^n (x^2 - 1)^n."""
    _check_index(n)
    base = (Poly.monomial(2) - Poly.constant(1)) ** n
    derivative = WeylOp(1, {(0, 0, n, 0): 1})
    return apply(derivative, base).scale(Fraction(1, 2**n * factorial(n)))


@lru_cache(maxsize=None)
def legendre_oracle(n: int) -> Poly:
    """(k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}."""
    _check_index(n)
    if n == 0:
        return Poly.constant(1)
    if n == 1:
        return Poly.monomial(1)
    k = n - 1
    return (
        (Poly.monomial(1) * legendre_oracle(k)).scale(2 * k + 1) - legendre_oracle(k - 1).scale(k)
    ).scale(Fraction(1, k + 1))


def laguerre_rodrigues(n: int) -> Poly:
    """(1/n!) (D - 1)^n x^n, as printed."""
    _check_index(n)
    op = (dx() - const(1)) ** n
    return apply(op, Poly.monomial(n)).scale(Fraction(LAGUERRE_SIGN, factorial(n)))


@lru_cache(maxsize=None)
def laguerre_oracle(n: int) -> Poly:
    """(k+1) L_{k+1} = (2k+1-x) L_k - k L_{k-1}."""
    _check_index(n)
    if n == 0:
        return Poly.constant(1)
    if n == 1:
        return Poly(1, {(0, 0): 1, (1, 0): -1})
    k = n - 1
    factor = Poly(1, {(0, 0): 2 * k + 1, (1, 0): -1})
    return (factor * laguerre_oracle(k) - laguerre_oracle(k - 1).scale(k)).scale(Fraction(1, k + 1))


def _check_index(n: int) -> None:
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise ValueError(f"polynomial index must be a non-negative integer, got {n!r}")
