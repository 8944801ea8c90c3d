"""Truncated graded polynomial spaces and matrix forms of operators.

Operators that never raise total degree leave the space of polynomials of
total degree <= N invariant, so their matrices there are exact finite shadows
of the operators. Exponentials are exact for degree-reducing operators
(the series terminates) and computed by scaling and squaring at a requested
decimal precision otherwise.

Exact matrices are sparse sympy ``DomainMatrix`` objects over QQ; float
matrices are ``mpmath.matrix`` objects.
"""

from __future__ import annotations

from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import ceil
from typing import Any

import mpmath
from mpmath import mpf
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from hermops import scalar
from hermops.errors import (
    DegreeOverflow,
    DimensionMismatch,
    NotInverse,
    NotNilpotent,
    VariableMismatch,
)
from hermops.models import Mode
from hermops.scalar import DEFAULT_PRECISION, Scalar
from hermops.weyl import MonoKey, Poly, WeylOp, apply

ZERO = Fraction(0)
ONE = Fraction(1)

# extra digits carried through the series and the squarings
GUARD_DIGITS = 10

Position = tuple[int, int]


@dataclass(frozen=True)
class GradedSpace:
    """Monomials of total degree <= max_total_degree in graded lexicographic order."""

    nvars: int
    max_total_degree: int

    def __post_init__(self) -> None:
        if self.nvars not in (1, 2):
            raise ValueError(f"nvars must be 1 or 2, got {self.nvars}")
        if self.max_total_degree < 0:
            raise ValueError("max_total_degree must be >= 0")

    @cached_property
    def basis(self) -> tuple[MonoKey, ...]:
        if self.nvars == 1:
            return tuple((d, 0) for d in range(self.max_total_degree + 1))
        return tuple(
            (i, d - i)
            for d in range(self.max_total_degree + 1)
            for i in range(d, -1, -1)
        )

    @cached_property
    def index(self) -> dict[MonoKey, int]:
        return {mono: pos for pos, mono in enumerate(self.basis)}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def degree_of(self, pos: int) -> int:
        """Total degree of the basis monomial at pos."""
        i, j = self.basis[pos]
        return i + j

    def coords(self, p: Poly) -> list[Scalar]:
        """Coordinates of a polynomial in this basis.

        Raises:
            DegreeOverflow: If p has a monomial outside the space.
        """
        if p.nvars != self.nvars:
            raise VariableMismatch(p.nvars, self.nvars)
        vec: list[Scalar] = [ZERO] * self.dim
        for mono, c in p.coeffs.items():
            if mono not in self.index:
                raise DegreeOverflow(mono, self.max_total_degree)
            vec[self.index[mono]] = c
        return vec

    def poly(self, vec: Sequence[Scalar]) -> Poly:
        """Polynomial with the given coordinates."""
        return Poly(self.nvars, {self.basis[pos]: c for pos, c in enumerate(vec) if c})


def _qq(value: Scalar | int) -> Any:
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def _fraction(element: Any) -> Fraction:
    return Fraction(int(element.numerator), int(element.denominator))


def _exact_data(shape: Position, entries: Mapping[Position, Scalar]) -> DomainMatrix:
    rows: dict[int, dict[int, Any]] = {}
    for (i, j), v in entries.items():
        if v:
            rows.setdefault(i, {})[j] = _qq(v)
    return DomainMatrix(rows, shape, QQ)


def _float_data(shape: Position, entries: Mapping[Position, Scalar], digits: int) -> mpmath.matrix:
    with mpmath.workdps(digits):
        data = mpmath.matrix(*shape)
        for (i, j), v in entries.items():
            if v:
                data[i, j] = scalar.to_mpf(v)
    return data


@dataclass(frozen=True, eq=False)
class OpMatrix:
    """Square matrix of an operator on a graded space.

    Column c holds the coordinates of the image of basis monomial c.
    Exact matrices hold a sparse DomainMatrix over QQ; float matrices hold an
    mpmath matrix and carry their working precision in decimal digits.
    """

    space: GradedSpace
    data: DomainMatrix | mpmath.matrix
    mode: Mode = Mode.EXACT
    precision: int | None = None

    def __post_init__(self) -> None:
        dim = self.space.dim
        if self.mode == Mode.EXACT:
            shape = tuple(self.data.shape)
        else:
            shape = (self.data.rows, self.data.cols)
        if shape != (dim, dim):
            raise DimensionMismatch(dim, shape)
        if self.mode == Mode.FLOAT and self.precision is None:
            object.__setattr__(self, "precision", DEFAULT_PRECISION)

    @classmethod
    def from_entries(
        cls,
        space: GradedSpace,
        entries: Mapping[Position, Scalar],
        mode: Mode = Mode.EXACT,
        precision: int | None = None,
    ) -> OpMatrix:
        """Build a matrix from its nonzero entries keyed by (row, column)."""
        shape = (space.dim, space.dim)
        if mode == Mode.EXACT:
            return cls(space, _exact_data(shape, entries))
        digits = precision or DEFAULT_PRECISION
        return cls(space, _float_data(shape, entries, digits), Mode.FLOAT, digits)

    @classmethod
    def identity(cls, space: GradedSpace) -> OpMatrix:
        return cls.from_entries(space, {(k, k): ONE for k in range(space.dim)})

    @classmethod
    def zeros(cls, space: GradedSpace) -> OpMatrix:
        return cls.from_entries(space, {})

    @property
    def dim(self) -> int:
        return self.space.dim

    def __getitem__(self, pos: Position) -> Scalar:
        i, j = pos
        if self.mode == Mode.EXACT:
            return _fraction(self.data[i, j].element)
        return self.data[i, j]

    def items(self) -> Iterator[tuple[Position, Scalar]]:
        """Nonzero entries as ((row, column), value)."""
        if self.mode == Mode.EXACT:
            for (i, j), v in self.data.iter_items():
                if v:
                    yield (i, j), _fraction(v)
            return
        for i in range(self.dim):
            for j in range(self.dim):
                v = self.data[i, j]
                if v:
                    yield (i, j), v

    def to_float(self, precision: int | None = None) -> OpMatrix:
        """Float copy at `precision` digits; self when already float at that precision."""
        digits = precision or self.precision or DEFAULT_PRECISION
        if self.mode == Mode.FLOAT and digits == self.precision:
            return self
        return OpMatrix.from_entries(self.space, dict(self.items()), Mode.FLOAT, digits)

    def _promote(self, other: OpMatrix) -> tuple[OpMatrix, OpMatrix, int | None]:
        if self.space != other.space:
            raise DimensionMismatch(self.space, other.space)
        if self.mode == Mode.EXACT and other.mode == Mode.EXACT:
            return self, other, None
        digits = max(p for p in (self.precision, other.precision) if p is not None)
        return self.to_float(digits), other.to_float(digits), digits

    def _build(self, data: DomainMatrix | mpmath.matrix, digits: int | None) -> OpMatrix:
        if digits is None:
            return OpMatrix(self.space, data)
        return OpMatrix(self.space, data, Mode.FLOAT, digits)

    def __matmul__(self, other: OpMatrix) -> OpMatrix:
        a, b, digits = self._promote(other)
        if digits is None:
            return self._build(a.data.matmul(b.data), None)
        with mpmath.workdps(digits + GUARD_DIGITS):
            return self._build(a.data * b.data, digits)

    def __add__(self, other: OpMatrix) -> OpMatrix:
        a, b, digits = self._promote(other)
        if digits is None:
            return self._build(a.data.add(b.data), None)
        with mpmath.workdps(digits + GUARD_DIGITS):
            return self._build(a.data + b.data, digits)

    def __sub__(self, other: OpMatrix) -> OpMatrix:
        a, b, digits = self._promote(other)
        if digits is None:
            return self._build(a.data.sub(b.data), None)
        with mpmath.workdps(digits + GUARD_DIGITS):
            return self._build(a.data - b.data, digits)

    def __neg__(self) -> OpMatrix:
        if self.mode == Mode.EXACT:
            return OpMatrix(self.space, self.data.neg())
        with mpmath.workdps(self.precision + GUARD_DIGITS):
            return OpMatrix(self.space, -self.data, Mode.FLOAT, self.precision)

    def scale(self, c: Scalar | int, precision: int | None = None) -> OpMatrix:
        """Multiply every entry by c; a float c promotes the matrix to float."""
        if scalar.is_exact(c) and self.mode == Mode.EXACT:
            return OpMatrix(self.space, self.data.scalarmul(_qq(c)))
        digits = precision or self.precision or DEFAULT_PRECISION
        base = self.to_float(digits)
        with mpmath.workdps(digits + GUARD_DIGITS):
            return OpMatrix(self.space, base.data * scalar.to_mpf(c), Mode.FLOAT, digits)

    def apply_vector(self, vec: Sequence[Scalar]) -> list[Scalar]:
        """Matrix-vector product; exact only when both sides are exact.

        Raises:
            DimensionMismatch: If vec does not match the space.
        """
        if len(vec) != self.dim:
            raise DimensionMismatch(self.dim, len(vec))
        if self.mode == Mode.EXACT and all(scalar.is_exact(v) for v in vec):
            column = _exact_data((self.dim, 1), {(i, 0): v for i, v in enumerate(vec)})
            image = self.data.matmul(column)
            return [_fraction(image[i, 0].element) for i in range(self.dim)]
        digits = self.precision or DEFAULT_PRECISION
        base = self.to_float(digits)
        with mpmath.workdps(digits + GUARD_DIGITS):
            column = mpmath.matrix([scalar.to_mpf(v) for v in vec])
            image = base.data * column
            return [image[i, 0] for i in range(self.dim)]

    def apply(self, p: Poly) -> Poly:
        """Image of a polynomial in the space."""
        return self.space.poly(self.apply_vector(self.space.coords(p)))

    def column(self, pos: int) -> list[Scalar]:
        return [self[i, pos] for i in range(self.dim)]

    def max_abs(self) -> Scalar:
        return max((abs(v) for _, v in self.items()), default=ZERO)

    def max_abs_diff(self, other: OpMatrix) -> Scalar:
        """Largest entry of |self - other|, the residual of matrix identities."""
        return (self - other).max_abs()

    def is_block_upper_triangular(self) -> bool:
        """No entry maps a monomial to one of strictly higher total degree."""
        degree_of = self.space.degree_of
        return all(degree_of(i) <= degree_of(j) for (i, j), _ in self.items())

    def leading_block(self, size: int) -> OpMatrix:
        """Restriction to the first `size` basis elements of a univariate space."""
        if self.space.nvars != 1 or not 1 <= size <= self.dim:
            raise DimensionMismatch(self.dim, size)
        entries = {(i, j): v for (i, j), v in self.items() if i < size and j < size}
        return OpMatrix.from_entries(GradedSpace(1, size - 1), entries, self.mode, self.precision)

    def without_columns(self, columns: Sequence[int]) -> OpMatrix:
        """Copy with the given columns zeroed."""
        dropped = set(columns)
        entries = {pos: v for pos, v in self.items() if pos[1] not in dropped}
        return OpMatrix.from_entries(self.space, entries, self.mode, self.precision)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OpMatrix):
            return NotImplemented
        return self.space == other.space and self.mode == other.mode and dict(self.items()) == dict(other.items())

    def __hash__(self) -> int:
        return hash((self.space, self.mode, frozenset(self.items())))


def _unit_image(op: WeylOp, space: GradedSpace, mono: MonoKey) -> Poly:
    return apply(op, Poly(space.nvars, {mono: 1}))


def to_matrix(
    op: WeylOp,
    space: GradedSpace,
    precision: int | None = None,
    restricted: bool = False,
) -> OpMatrix:
    """Matrix of op acting on the basis of space.

    Float operators are converted at `precision` digits (default 50). With
    `restricted`, columns whose image leaves the space are zeroed instead of
    raising; see overflow_columns.

    Raises:
        VariableMismatch: If op and space differ in nvars.
        DegreeOverflow: If op maps a basis monomial above the top degree.
    """
    if op.nvars != space.nvars:
        raise VariableMismatch(op.nvars, space.nvars)
    # exact ops key on precision None: equal-valued exact and float ops hash alike
    digits = None if op.is_exact else scalar.check_precision(precision or DEFAULT_PRECISION)
    return _to_matrix(op, space, digits, restricted)


@lru_cache(maxsize=256)
def _to_matrix(op: WeylOp, space: GradedSpace, digits: int | None, restricted: bool) -> OpMatrix:
    entries: dict[Position, Scalar] = {}
    for col, mono in enumerate(space.basis):
        image = _unit_image(op, space, mono)
        if restricted and any(key not in space.index for key in image.coeffs):
            continue
        for key, c in image.coeffs.items():
            row = space.index.get(key)
            if row is None:
                raise DegreeOverflow(mono, space.max_total_degree)
            entries[row, col] = c
    if digits is None:
        return OpMatrix.from_entries(space, entries)
    return OpMatrix.from_entries(space, entries, Mode.FLOAT, digits)


def overflow_columns(op: WeylOp, space: GradedSpace) -> tuple[int, ...]:
    """Basis positions whose image under op leaves the space."""
    return tuple(
        col
        for col, mono in enumerate(space.basis)
        if any(key not in space.index for key in _unit_image(op, space, mono).coeffs)
    )


def exp_exact_nilpotent(op: WeylOp, space: GradedSpace) -> OpMatrix:
    """Exact exponential of an operator whose every term lowers total degree.

    The series sum_{p<=P} M^p/p! terminates because M is nilpotent on the
    space; P = ceil(N / smallest degree drop).

    Raises:
        NotNilpotent: If some term does not strictly decrease total degree.
    """
    return _exp_exact_nilpotent(op, space, op.is_exact)


@lru_cache(maxsize=256)
def _exp_exact_nilpotent(op: WeylOp, space: GradedSpace, exact: bool) -> OpMatrix:
    drops = []
    for term in op.terms:
        i, j, k, l = term
        if i + j >= k + l:
            raise NotNilpotent(term)
        drops.append(k + l - i - j)
    matrix = to_matrix(op, space)
    result = OpMatrix.identity(space)
    if not drops or space.max_total_degree == 0:
        return result
    order = ceil(space.max_total_degree / min(drops))
    term_matrix = result
    for p in range(1, order + 1):
        term_matrix = (term_matrix @ matrix).scale(Fraction(1, p))
        result = result + term_matrix
    return result


def series_order(theta: mpf, digits: int) -> int:
    """Smallest P with theta^(P+1)/(P+1)! < 10^-digits."""
    if not theta:
        return 0
    eps = mpf(10) ** (-digits)
    order = 1
    bound = theta * theta / 2
    while bound >= eps:
        order += 1
        bound = bound * theta / (order + 1)
    return order


def exp_numeric(m: OpMatrix, precision: int = DEFAULT_PRECISION) -> OpMatrix:
    """Matrix exponential by scaling and squaring at `precision` decimal digits.

    Squarings s are chosen so that ||M/2^s||_1 <= 1/2, then the Taylor order
    P so the truncation bound ||M/2^s||^(P+1)/(P+1)! falls below
    10^-(precision + guard).
    """
    scalar.check_precision(precision)
    with mpmath.workdps(precision + GUARD_DIGITS):
        norm = mpmath.mnorm(m.to_float(precision + GUARD_DIGITS).data, 1)
        squarings = 0
        if norm > mpf(1) / 2:
            squarings = int(mpmath.ceil(mpmath.log(2 * norm, 2)))
        lost = ceil(squarings * 0.30103) + int(mpmath.ceil(mpmath.log10(norm + 1)))
    digits = precision + GUARD_DIGITS + lost
    with mpmath.workdps(digits):
        factor = mpf(2) ** (-squarings)
        scaled = m.to_float(digits).data * factor
        order = series_order(norm * factor, precision + GUARD_DIGITS)
        result = mpmath.eye(m.dim)
        term = result
        for p in range(1, order + 1):
            term = (term * scaled) / p
            result = result + term
        for _ in range(squarings):
            result = result * result
    return OpMatrix(m.space, result, Mode.FLOAT, precision)


def _identity_deviation(product: OpMatrix) -> Scalar:
    return product.max_abs_diff(OpMatrix.identity(product.space))


def conjugate(a: OpMatrix, t: OpMatrix, t_inv: OpMatrix) -> OpMatrix:
    """Similarity transform t * a * t_inv.

    Raises:
        DimensionMismatch: If the matrices live on different spaces.
        NotInverse: If t_inv * t is not the identity to mode tolerance.
    """
    if not a.space == t.space == t_inv.space:
        raise DimensionMismatch(a.space, t.space if a.space != t.space else t_inv.space)
    product = t_inv @ t
    deviation = _identity_deviation(product)
    if product.mode == Mode.EXACT:
        if deviation != 0:
            raise NotInverse(deviation)
    else:
        with mpmath.workdps(product.precision):
            magnitude = max(mpf(1), scalar.to_mpf(t.max_abs()) * scalar.to_mpf(t_inv.max_abs()) * t.dim)
            if deviation > magnitude * mpf(10) ** (-product.precision + 4):
                raise NotInverse(deviation)
    return t @ a @ t_inv
