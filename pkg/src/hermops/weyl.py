"""Normal-ordered differential operators with polynomial coefficients.

A WeylOp in one or two variables is a finite map from
(x-power, y-power, dx-order, dy-order) to a scalar, always read with every
coordinate factor to the left of every derivative. Products are brought back
to that form with the Leibniz rule, so equality of operators is equality of
term maps.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, perm
from types import MappingProxyType

from hermops import scalar
from hermops.errors import VariableMismatch, ZeroParameter
from hermops.scalar import Scalar

OpKey = tuple[int, int, int, int]
MonoKey = tuple[int, int]


def _check_nvars(nvars: int) -> None:
    if nvars not in (1, 2):
        raise ValueError(f"nvars must be 1 or 2, got {nvars}")


def _accumulate(target: dict, key: tuple, coeff: Scalar) -> None:
    if key in target:
        target[key] = scalar.add(target[key], coeff)
    else:
        target[key] = coeff


def _freeze(terms: dict) -> MappingProxyType:
    # sorted keys keep iteration order (and so rendering) deterministic
    return MappingProxyType({k: terms[k] for k in sorted(terms) if terms[k] != 0})


def _coerce(coeff: Scalar | int) -> Scalar:
    if isinstance(coeff, int) and not isinstance(coeff, bool):
        return Fraction(coeff)
    return coeff


@dataclass(frozen=True, eq=False)
class Poly:
    """Polynomial in one or two variables: (x-degree, y-degree) -> coefficient."""

    nvars: int
    coeffs: Mapping[MonoKey, Scalar] = field(default_factory=dict)

    def __post_init__(self) -> None:
        _check_nvars(self.nvars)
        cleaned: dict[MonoKey, Scalar] = {}
        for (i, j), c in self.coeffs.items():
            if i < 0 or j < 0:
                raise ValueError(f"Negative exponent in monomial {(i, j)}")
            if self.nvars == 1 and j != 0:
                raise VariableMismatch(1, 2)
            _accumulate(cleaned, (i, j), _coerce(c))
        object.__setattr__(self, "coeffs", _freeze(cleaned))

    @classmethod
    def zero(cls, nvars: int = 1) -> Poly:
        """The zero polynomial."""
        return cls(nvars, {})

    @classmethod
    def constant(cls, c: Scalar | int, nvars: int = 1) -> Poly:
        return cls(nvars, {(0, 0): c})

    @classmethod
    def monomial(cls, xdeg: int, ydeg: int = 0, nvars: int | None = None, coeff: Scalar | int = 1) -> Poly:
        """coeff * x^xdeg y^ydeg; bivariate whenever ydeg is nonzero."""
        if nvars is None:
            nvars = 2 if ydeg else 1
        return cls(nvars, {(xdeg, ydeg): coeff})

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def total_degree(self) -> int:
        """Largest i + j over stored monomials; -1 for the zero polynomial."""
        return max((i + j for i, j in self.coeffs), default=-1)

    def coeff(self, xdeg: int, ydeg: int = 0) -> Scalar:
        """Coefficient of x^xdeg y^ydeg, zero when absent."""
        return self.coeffs.get((xdeg, ydeg), Fraction(0))

    def _check(self, other: Poly) -> None:
        if self.nvars != other.nvars:
            raise VariableMismatch(self.nvars, other.nvars)

    def __add__(self, other: Poly) -> Poly:
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            _accumulate(out, key, c)
        return Poly(self.nvars, out)

    def __neg__(self) -> Poly:
        return Poly(self.nvars, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other: Poly) -> Poly:
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def scale(self, c: Scalar | int) -> Poly:
        c = _coerce(c)
        return Poly(self.nvars, {k: scalar.mul(c, v) for k, v in self.coeffs.items()})

    def __mul__(self, other: Poly | Scalar | int) -> Poly:
        if isinstance(other, Poly):
            self._check(other)
            out: dict[MonoKey, Scalar] = {}
            for (i, j), c in self.coeffs.items():
                for (p, q), d in other.coeffs.items():
                    _accumulate(out, (i + p, j + q), scalar.mul(c, d))
            return Poly(self.nvars, out)
        return self.scale(other)

    def __rmul__(self, other: Scalar | int) -> Poly:
        return self.scale(other)

    def __pow__(self, exponent: int) -> Poly:
        result = Poly.constant(1, self.nvars)
        for _ in range(exponent):
            result = result * self
        return result

    def substitute_neg_x(self) -> Poly:
        """Return p(-x, y)."""
        return Poly(self.nvars, {(i, j): (-c if i % 2 else c) for (i, j), c in self.coeffs.items()})

    def swap_xy(self) -> Poly:
        """Return p(y, x) for a bivariate polynomial."""
        if self.nvars != 2:
            raise VariableMismatch(self.nvars, 2)
        return Poly(2, {(j, i): c for (i, j), c in self.coeffs.items()})

    def max_abs_coeff(self) -> Scalar:
        """Largest absolute coefficient; zero for the zero polynomial."""
        return max((abs(c) for c in self.coeffs.values()), default=Fraction(0))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and dict(self.coeffs) == dict(other.coeffs)

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.coeffs.items())))

    def __repr__(self) -> str:
        return f"Poly({self.nvars}, {format_poly(self)})"


@dataclass(frozen=True, eq=False)
class WeylOp:
    """Normal-ordered operator: (x-power, y-power, dx-order, dy-order) -> coefficient."""

    nvars: int
    terms: Mapping[OpKey, Scalar] = field(default_factory=dict)

    def __post_init__(self) -> None:
        _check_nvars(self.nvars)
        cleaned: dict[OpKey, Scalar] = {}
        for key, c in self.terms.items():
            if len(key) != 4 or min(key) < 0:
                raise ValueError(f"Malformed operator term {key}")
            if self.nvars == 1 and (key[1] or key[3]):
                raise VariableMismatch(1, 2)
            _accumulate(cleaned, tuple(key), _coerce(c))
        object.__setattr__(self, "terms", _freeze(cleaned))

    @classmethod
    def zero(cls, nvars: int = 1) -> WeylOp:
        return cls(nvars, {})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def total_order(self) -> int:
        """Largest i + j + k + l over stored terms; -1 for the zero operator."""
        return max((sum(key) for key in self.terms), default=-1)

    @property
    def is_exact(self) -> bool:
        """True when every coefficient is a Fraction."""
        return all(scalar.is_exact(c) for c in self.terms.values())

    def degree_shifts(self) -> set[int]:
        """Change of total degree each term applies to a monomial it does not kill."""
        return {i + j - k - l for i, j, k, l in self.terms}

    def __add__(self, other: WeylOp) -> WeylOp:
        if not isinstance(other, WeylOp):
            return NotImplemented
        return wo_add(self, other)

    def __neg__(self) -> WeylOp:
        return self.scale(-1)

    def __sub__(self, other: WeylOp) -> WeylOp:
        if not isinstance(other, WeylOp):
            return NotImplemented
        return wo_add(self, -other)

    def scale(self, c: Scalar | int) -> WeylOp:
        c = _coerce(c)
        return WeylOp(self.nvars, {k: scalar.mul(c, v) for k, v in self.terms.items()})

    def __mul__(self, other: WeylOp | Scalar | int) -> WeylOp:
        if isinstance(other, WeylOp):
            return wo_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other: Scalar | int) -> WeylOp:
        return self.scale(other)

    def __pow__(self, exponent: int) -> WeylOp:
        result = const(1, self.nvars)
        for _ in range(exponent):
            result = wo_mul(result, self)
        return result

    def __call__(self, p: Poly) -> Poly:
        return apply(self, p)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeylOp):
            return NotImplemented
        return self.nvars == other.nvars and dict(self.terms) == dict(other.terms)

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"WeylOp({self.nvars}, {format_op(self)})"


def const(c: Scalar | int, nvars: int = 1) -> WeylOp:
    """Multiplication by a constant."""
    return WeylOp(nvars, {(0, 0, 0, 0): c})


def x(nvars: int = 1) -> WeylOp:
    return WeylOp(nvars, {(1, 0, 0, 0): 1})


def y() -> WeylOp:
    return WeylOp(2, {(0, 1, 0, 0): 1})


def dx(nvars: int = 1) -> WeylOp:
    return WeylOp(nvars, {(0, 0, 1, 0): 1})


def dy() -> WeylOp:
    return WeylOp(2, {(0, 0, 0, 1): 1})


def _check_pair(a: WeylOp | Poly, b: WeylOp | Poly) -> None:
    if a.nvars != b.nvars:
        raise VariableMismatch(a.nvars, b.nvars)


def wo_add(a: WeylOp, b: WeylOp) -> WeylOp:
    """Termwise sum.

    Raises:
        VariableMismatch: If the operands differ in nvars.
    """
    _check_pair(a, b)
    out = dict(a.terms)
    for key, c in b.terms.items():
        _accumulate(out, key, c)
    return WeylOp(a.nvars, out)


def _leibniz(order: int, power: int) -> Iterable[tuple[int, int]]:
    """Pairs (t, weight) with d^order x^power = sum weight x^(power-t) d^(order-t)."""
    for t in range(min(order, power) + 1):
        yield t, comb(order, t) * perm(power, t)


def wo_mul(a: WeylOp, b: WeylOp) -> WeylOp:
    """Composition a o b, rewritten into normal order.

    Raises:
        VariableMismatch: If the operands differ in nvars.
    """
    _check_pair(a, b)
    out: dict[OpKey, Scalar] = {}
    for (i, j, k, l), c in a.terms.items():
        for (p, q, r, s), d in b.terms.items():
            cd = scalar.mul(c, d)
            for t, wx in _leibniz(k, p):
                for u, wy in _leibniz(l, q):
                    key = (i + p - t, j + q - u, k - t + r, l - u + s)
                    _accumulate(out, key, scalar.mul(cd, Fraction(wx * wy)))
    return WeylOp(a.nvars, out)


def commutator(a: WeylOp, b: WeylOp) -> WeylOp:
    """[a, b] = a o b - b o a."""
    return wo_mul(a, b) - wo_mul(b, a)


def apply(op: WeylOp, p: Poly) -> Poly:
    """Image of a polynomial under an operator.

    Raises:
        VariableMismatch: If the operator and polynomial differ in nvars.
    """
    _check_pair(op, p)
    out: dict[MonoKey, Scalar] = {}
    for (i, j, k, l), c in op.terms.items():
        for (m, n), d in p.coeffs.items():
            if m < k or n < l:
                continue
            weight = Fraction(perm(m, k) * perm(n, l))
            _accumulate(out, (m - k + i, n - l + j), scalar.mul(scalar.mul(c, d), weight))
    return Poly(p.nvars, out)


def _divide(a: Scalar, b: Scalar) -> Scalar:
    if scalar.is_exact(a) and scalar.is_exact(b):
        return Fraction(a) / Fraction(b)
    return scalar.to_mpf(a) / scalar.to_mpf(b)


def scalar_multiple_of(a: WeylOp, b: WeylOp) -> Scalar | None:
    """Return s with a = s*b, or None when a is not proportional to b.

    Raises:
        ZeroParameter: If b is the zero operator.
        VariableMismatch: If the operands differ in nvars.
    """
    _check_pair(a, b)
    if b.is_zero:
        raise ZeroParameter("b")
    if a.is_zero:
        return Fraction(0)
    if set(a.terms) != set(b.terms):
        return None
    keys = iter(b.terms)
    first = next(keys)
    ratio = _divide(a.terms[first], b.terms[first])
    for key in keys:
        if _divide(a.terms[key], b.terms[key]) != ratio:
            return None
    return ratio


def _render_coeff(c: Scalar, first: bool) -> tuple[str, str]:
    """Sign and magnitude text of a coefficient; first terms omit a leading "+"."""
    text = scalar.format_scalar(c)
    if text.startswith("-"):
        return "-" if first else " - ", text[1:]
    return ("" if first else " + "), text


def _render(items: Iterable[tuple[Scalar, list[str]]]) -> str:
    parts: list[str] = []
    for c, factors in items:
        sign, magnitude = _render_coeff(c, not parts)
        if factors and magnitude == "1":
            body = "*".join(factors)
        else:
            body = "*".join([magnitude, *factors])
        parts.append(sign + body)
    return "".join(parts) if parts else "0"


def _power(name: str, e: int) -> list[str]:
    if e == 0:
        return []
    return [name if e == 1 else f"{name}^{e}"]


def format_op(op: WeylOp) -> str:
    """Human-readable normal-ordered rendering, e.g. "x*dx - dx^2"."""
    ordered = sorted(
        op.terms.items(), key=lambda kv: (-sum(kv[0]), -kv[0][0], -kv[0][1], kv[0][2], kv[0][3])
    )
    return _render(
        (c, _power("x", i) + _power("y", j) + _power("dx", k) + _power("dy", l))
        for (i, j, k, l), c in ordered
    )


def format_poly(p: Poly) -> str:
    """Human-readable rendering, highest total degree first."""
    ordered = sorted(p.coeffs.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0]))
    return _render((c, _power("x", i) + _power("y", j)) for (i, j), c in ordered)
