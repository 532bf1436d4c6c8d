"""Exact linear algebra over the rationals.

Vectors and matrices are immutable; every operation is a pure function
of its inputs and safe to run concurrently.  Reduction is plain
Gauss-Jordan with "first nonzero entry in column order" pivoting --
exact arithmetic needs no partial pivoting, and the fixed rule makes
every result reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import DimensionMismatch, NotSurjective

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _coerce(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        from .rationals import parse_rational

        return parse_rational(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


@dataclass(frozen=True)
class QVector:
    """Dense vector of rationals."""

    entries: tuple[Fraction, ...]

    @staticmethod
    def of(values: Iterable) -> "QVector":
        return QVector(tuple(_coerce(v) for v in values))

    @staticmethod
    def zeros(dim: int) -> "QVector":
        return QVector((_ZERO,) * dim)

    @staticmethod
    def unit(dim: int, index: int) -> "QVector":
        entries = [_ZERO] * dim
        entries[index] = _ONE
        return QVector(tuple(entries))

    @property
    def dim(self) -> int:
        return len(self.entries)

    def dot(self, other: "QVector") -> Fraction:
        if self.dim != other.dim:
            raise DimensionMismatch(f"dot product of dim {self.dim} with dim {other.dim}")
        total = _ZERO
        for a, b in zip(self.entries, other.entries):
            total += a * b
        return total

    def scale(self, factor) -> "QVector":
        c = _coerce(factor)
        return QVector(tuple(c * e for e in self.entries))

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)

    def __add__(self, other: "QVector") -> "QVector":
        if self.dim != other.dim:
            raise DimensionMismatch(f"sum of dim {self.dim} with dim {other.dim}")
        return QVector(tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "QVector") -> "QVector":
        return self + (-other)

    def __neg__(self) -> "QVector":
        return QVector(tuple(-e for e in self.entries))

    def __getitem__(self, index: int) -> Fraction:
        return self.entries[index]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class QMatrix:
    """Dense rational matrix, row-major storage."""

    rows: int
    cols: int
    data: tuple[Fraction, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.data) != self.rows * self.cols:
            raise ValueError(
                f"matrix data has {len(self.data)} entries, expected {self.rows * self.cols}"
            )

    @staticmethod
    def from_rows(rows: Sequence[Sequence], cols: Optional[int] = None) -> "QMatrix":
        rows = [tuple(_coerce(v) for v in row) for row in rows]
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("ragged rows in matrix literal")
            if cols is not None and cols != width:
                raise ValueError(f"declared cols {cols} but rows have {width} entries")
            cols = width
        elif cols is None:
            cols = 0
        return QMatrix(len(rows), cols, tuple(v for row in rows for v in row))

    @staticmethod
    def identity(n: int) -> "QMatrix":
        data = [_ZERO] * (n * n)
        for i in range(n):
            data[i * n + i] = _ONE
        return QMatrix(n, n, tuple(data))

    @staticmethod
    def zeros(rows: int, cols: int) -> "QMatrix":
        return QMatrix(rows, cols, (_ZERO,) * (rows * cols))

    def entry(self, i: int, j: int) -> Fraction:
        return self.data[i * self.cols + j]

    def row(self, i: int) -> QVector:
        return QVector(self.data[i * self.cols:(i + 1) * self.cols])

    def column(self, j: int) -> QVector:
        return QVector(tuple(self.data[i * self.cols + j] for i in range(self.rows)))

    def row_lists(self) -> list[list[Fraction]]:
        return [list(self.data[i * self.cols:(i + 1) * self.cols]) for i in range(self.rows)]

    def apply(self, x: QVector) -> QVector:
        """Matrix-vector product M·x."""
        if x.dim != self.cols:
            raise DimensionMismatch(f"applying {self.rows}x{self.cols} matrix to dim {x.dim}")
        out = []
        for i in range(self.rows):
            base = i * self.cols
            total = _ZERO
            for j, xj in enumerate(x.entries):
                total += self.data[base + j] * xj
            out.append(total)
        return QVector(tuple(out))

    def left_apply(self, f: QVector) -> QVector:
        """Row-vector product fᵀ·M; composes a functional with the map."""
        if f.dim != self.rows:
            raise DimensionMismatch(f"left-applying dim {f.dim} to {self.rows}x{self.cols} matrix")
        out = []
        for j in range(self.cols):
            total = _ZERO
            for i, fi in enumerate(f.entries):
                total += fi * self.data[i * self.cols + j]
            out.append(total)
        return QVector(tuple(out))

    def matmul(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"product of {self.rows}x{self.cols} with {other.rows}x{other.cols}"
            )
        out = []
        for i in range(self.rows):
            for j in range(other.cols):
                total = _ZERO
                for k in range(self.cols):
                    total += self.data[i * self.cols + k] * other.data[k * other.cols + j]
                out.append(total)
        return QMatrix(self.rows, other.cols, tuple(out))

    def transpose(self) -> "QMatrix":
        out = []
        for j in range(self.cols):
            for i in range(self.rows):
                out.append(self.data[i * self.cols + j])
        return QMatrix(self.cols, self.rows, tuple(out))


def primitivize(values: tuple[Fraction, ...], orient: bool = False):
    """Scale to primitive integer form: integer entries with overall gcd 1.

    Returns ``(scaled, s)`` with ``scaled = s * values``.  The scale is
    positive unless ``orient`` is set, in which case its sign is chosen
    so the first nonzero entry comes out positive.  All-zero input is
    returned unchanged with scale 1.
    """
    nonzero = [v for v in values if v != 0]
    if not nonzero:
        return tuple(values), _ONE
    lcm = math.lcm(*(v.denominator for v in nonzero))
    gcd = math.gcd(*(abs(v.numerator) * (lcm // v.denominator) for v in nonzero))
    s = Fraction(lcm, gcd)
    if orient and nonzero[0] < 0:
        s = -s
    return tuple(v * s for v in values), s


def _rref_in_place(rows: list[list[Fraction]], struct_cols: int) -> tuple[int, ...]:
    """Gauss-Jordan on a mutable row list; pivots only in the first
    ``struct_cols`` columns (extra columns ride along, for augmentation)."""
    m = len(rows)
    pivots = []
    r = 0
    for c in range(struct_cols):
        if r == m:
            break
        pr = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if pr is None:
            continue
        if pr != r:
            rows[r], rows[pr] = rows[pr], rows[r]
        pivot = rows[r][c]
        if pivot != 1:
            inv = _ONE / pivot
            rows[r] = [x * inv for x in rows[r]]
        pivot_row = rows[r]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], pivot_row)]
        pivots.append(c)
        r += 1
    return tuple(pivots)


def rref(matrix: QMatrix) -> tuple[QMatrix, tuple[int, ...]]:
    """Reduced row echelon form and the ordered list of pivot columns."""
    rows = matrix.row_lists()
    pivots = _rref_in_place(rows, matrix.cols)
    data = tuple(x for row in rows for x in row)
    return QMatrix(matrix.rows, matrix.cols, data), pivots


def rank(matrix: QMatrix) -> int:
    """Number of pivots of the reduced row echelon form."""
    return len(rref(matrix)[1])


def kernel_basis(matrix: QMatrix) -> list[QVector]:
    """Basis of the null space, one vector per free column of the rref.

    Vectors come out in free-column order, each in primitive integer
    form with a positive leading entry; the list is empty exactly when
    the matrix is injective.
    """
    red, pivots = rref(matrix)
    n = matrix.cols
    pivot_set = set(pivots)
    basis = []
    for fc in range(n):
        if fc in pivot_set:
            continue
        v = [_ZERO] * n
        v[fc] = _ONE
        for r, pc in enumerate(pivots):
            v[pc] = -red.entry(r, fc)
        scaled, _ = primitivize(tuple(v), orient=True)
        basis.append(QVector(scaled))
    return basis


def right_inverse(matrix: QMatrix) -> QMatrix:
    """A matrix P with M·P = identity on the codomain.

    Deterministic: column i of P solves M·p = e_i with every free
    variable pinned to zero in rref coordinates.  Raises NotSurjective
    when rank(M) < rows(M).
    """
    m, n = matrix.rows, matrix.cols
    rows = matrix.row_lists()
    for i in range(m):
        ident = [_ZERO] * m
        ident[i] = _ONE
        rows[i] = rows[i] + ident
    pivots = _rref_in_place(rows, n)
    if len(pivots) < m:
        raise NotSurjective(len(pivots), m)
    data = [_ZERO] * (n * m)
    for r, pc in enumerate(pivots):
        for i in range(m):
            data[pc * m + i] = rows[r][n + i]
    return QMatrix(n, m, tuple(data))


def solve_affine(matrix: QMatrix, b: QVector) -> Optional[QVector]:
    """One exact solution of M·x = b, or None when inconsistent.

    Free variables are pinned to zero in rref coordinates, so the
    result is deterministic.
    """
    if b.dim != matrix.rows:
        raise DimensionMismatch(
            f"right-hand side has dim {b.dim}, matrix has {matrix.rows} rows"
        )
    rows = matrix.row_lists()
    for i in range(matrix.rows):
        rows[i] = rows[i] + [b[i]]
    pivots = _rref_in_place(rows, matrix.cols)
    for i in range(len(pivots), matrix.rows):
        if rows[i][matrix.cols] != 0:
            return None
    x = [_ZERO] * matrix.cols
    for r, pc in enumerate(pivots):
        x[pc] = rows[r][matrix.cols]
    return QVector(tuple(x))
