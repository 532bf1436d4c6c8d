"""Images and preimages of polyhedra under linear maps, with certificates.

The image pipeline eliminates one kernel direction at a time: rows are
partitioned by the sign of their value on the direction, each
opposite-sign pair combines into a row that vanishes on it, and
zero-sign rows pass through.  Every derived row is a nonnegative
combination of the input rows; the combination is recorded as a
certificate and composed across steps, so each final row carries an
audit trail back to the caller's original rows.  Once every surviving
row vanishes on the whole kernel, each one factors uniquely through the
map and the result lives in the codomain.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import (
    DimensionMismatch,
    KernelNotContained,
    NotSurjective,
    PreconditionViolated,
    ZeroDirection,
)
from .linalg import (
    QMatrix,
    QVector,
    kernel_basis,
    primitivize,
    rank,
    right_inverse,
    rref,
    solve_affine,
)
from .polyhedron import (
    HPolyhedron,
    IneqRow,
    contains,
    irredundant_indices,
    normalize_rows,
    normalize_with_payload,
    sign_partition,
)

_ZERO = Fraction(0)
_ONE = Fraction(1)

# Intermediate systems at least this large get an irredundancy pass
# between elimination steps (only when the caller leaves the choice open).
AUTO_REDUCE_ROWS = 100


@dataclass(frozen=True)
class LinMap:
    """A linear map stored as its matrix (rows = codomain dim, cols = domain dim)."""

    matrix: QMatrix

    @staticmethod
    def from_rows(rows, cols: Optional[int] = None) -> "LinMap":
        return LinMap(QMatrix.from_rows(rows, cols=cols))

    @staticmethod
    def identity(n: int) -> "LinMap":
        return LinMap(QMatrix.identity(n))

    @property
    def dim_domain(self) -> int:
        return self.matrix.cols

    @property
    def dim_codomain(self) -> int:
        return self.matrix.rows

    def apply(self, x: QVector) -> QVector:
        return self.matrix.apply(x)


@dataclass(frozen=True)
class Certificate:
    """Nonnegative multipliers over input rows proving one output row.

    Validity for an output row ``(g, b)`` means ``sum c_k * a_k`` equals
    g composed with the map and ``sum c_k * b_k`` equals b, over the
    input rows ``(a_k, b_k)``.  Rows produced by `eliminate_direction`
    live in the same space as their inputs, so there the identity map
    plays the role of the composition.
    """

    multipliers: tuple[tuple[int, Fraction], ...]
    functional: Optional[QVector] = None

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.multipliers)


def _cert_from_dict(mults: dict[int, Fraction], functional: Optional[QVector] = None) -> Certificate:
    items = tuple(sorted((k, c) for k, c in mults.items() if c != 0))
    return Certificate(multipliers=items, functional=functional)


def _scale_mults(mults: dict[int, Fraction], s: Fraction) -> dict[int, Fraction]:
    return {k: c * s for k, c in mults.items()}


def _compose(step: dict[int, Fraction], base: list[dict[int, Fraction]]) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for mid, c in step.items():
        for k, d in base[mid].items():
            out[k] = out.get(k, _ZERO) + c * d
    return {k: v for k, v in out.items() if v != 0}


def eliminate_direction(poly: HPolyhedron, xi: QVector):
    """Project out one direction: the Fourier-Motzkin step in coordinate-free form.

    Rows with ``a·xi = 0`` pass through; each pair (i, j) with
    ``a_i·xi > 0 > a_j·xi`` yields the combined row

        h = a_i - (a_i·xi / a_j·xi) * a_j,   bound b_i - (a_i·xi / a_j·xi) * b_j,

    a nonnegative combination because the quotient is negative.  When
    either sign class is empty the pair family contributes nothing (that
    side of the projection is the whole space).  Every output row h
    satisfies ``h·xi = 0`` exactly, and a point lies in the output iff
    some translate of it along xi lies in the input.

    Returns the normalized polyhedron together with one certificate per
    output row, indexed against ``poly.rows``.
    """
    if xi.dim != poly.dim:
        raise DimensionMismatch(f"direction of dim {xi.dim} in polyhedron of dim {poly.dim}")
    if xi.is_zero():
        raise ZeroDirection("cannot eliminate along the zero direction")

    part = sign_partition(poly, xi)

    # Integer fast path: work on primitive-integer copies of the rows and
    # fold the per-row scale into the certificate multipliers.
    prim = []
    for row in poly.rows:
        scaled, s = primitivize(row.a.entries + (row.b,))
        prim.append(([v.numerator for v in scaled[:-1]], scaled[-1].numerator, s))
    xi_scaled, _ = primitivize(xi.entries)
    xi_int = [v.numerator for v in xi_scaled]

    def dot_int(coeffs):
        return sum(c * x for c, x in zip(coeffs, xi_int))

    pairs = []
    for k in part.k_zero:
        coeffs, bound, s = prim[k]
        row = IneqRow(QVector(tuple(Fraction(c) for c in coeffs)), Fraction(bound))
        pairs.append((row, {k: s}))
    if part.k_plus and part.k_minus:
        for i in part.k_plus:
            ai, bi, si = prim[i]
            di = dot_int(ai)
            for j in part.k_minus:
                aj, bj, sj = prim[j]
                dj = dot_int(aj)
                # positive integer combination (-dj)*row_i + di*row_j
                coeffs = tuple(-dj * p + di * q for p, q in zip(ai, aj))
                bound = -dj * bi + di * bj
                row = IneqRow(QVector(tuple(Fraction(c) for c in coeffs)), Fraction(bound))
                pairs.append((row, {i: -dj * si, j: di * sj}))
    normalized = normalize_with_payload(pairs, _scale_mults)
    rows = tuple(row for row, _ in normalized)
    certs = [_cert_from_dict(m) for _, m in normalized]
    return HPolyhedron(poly.dim, rows), certs


def _lift_unchecked(poly: HPolyhedron, xi: QVector, x: QVector) -> QVector:
    """The ``x + t*xi`` construction; assumes x satisfies the eliminated system."""
    part = sign_partition(poly, xi)
    if part.k_minus:
        t = None
        for j in part.k_minus:
            row = poly.rows[j]
            value = (row.b - row.a.dot(x)) / row.a.dot(xi)
            if t is None or value > t:
                t = value
    elif part.k_plus:
        t = None
        for i in part.k_plus:
            row = poly.rows[i]
            value = (row.b - row.a.dot(x)) / row.a.dot(xi)
            if t is None or value < t:
                t = value
    else:
        t = _ZERO
    return x + xi.scale(t)


def lift_witness(poly: HPolyhedron, xi: QVector, x: QVector) -> QVector:
    """Pull a point of the eliminated polyhedron back into the original one.

    Returns ``x + t*xi`` lying in ``poly``, where t is 0 when no row sees
    the direction, the minimum of ``(b_i - a_i·x)/(a_i·xi)`` over the
    positive-sign rows when only those exist, and the maximum of the same
    expression over the negative-sign rows otherwise.  The precondition
    that x satisfies ``eliminate_direction(poly, xi)`` is checked.
    """
    eliminated, _ = eliminate_direction(poly, xi)
    if not contains(eliminated, x):
        raise PreconditionViolated(
            "point does not satisfy the eliminated system; cannot lift it"
        )
    return _lift_unchecked(poly, xi, x)


def factor_through(lin_map: LinMap, f: QVector, b: Fraction):
    """Write a functional as ``g∘T`` for a surjective map T.

    Requires T onto its codomain and ker T inside ker f (both checked).
    The factoring g is unique, and is computed as f times a right
    inverse of T; by uniqueness the choice of right inverse is
    immaterial.  The bound rides along unchanged.
    """
    matrix = lin_map.matrix
    if f.dim != matrix.cols:
        raise DimensionMismatch(f"functional of dim {f.dim} over domain of dim {matrix.cols}")
    r = rank(matrix)
    if r < matrix.rows:
        raise NotSurjective(r, matrix.rows)
    for v in kernel_basis(matrix):
        if f.dot(v) != 0:
            raise KernelNotContained(
                "functional does not vanish on the kernel of the map; cannot factor"
            )
    g = right_inverse(matrix).left_apply(f)
    return g, b


def image(lin_map: LinMap, poly: HPolyhedron, minimize: bool = False,
          reduce_intermediate: Optional[bool] = None):
    """The forward image of a polyhedron under a surjective linear map.

    Eliminates a kernel basis one direction at a time (directions every
    current row already vanishes on are skipped -- that is exactly the
    quotient-by-common-kernel case), then factors each surviving row
    through the map.  Returns the normalized image with one certificate
    per row over ``poly.rows``; a point lies in the image iff it is the
    value of the map at some point of the input.

    ``reduce_intermediate`` controls the irredundancy pass between
    elimination steps: None applies it only when an intermediate system
    reaches AUTO_REDUCE_ROWS rows.  ``minimize`` makes the final output
    irredundant as well.
    """
    matrix = lin_map.matrix
    if poly.dim != matrix.cols:
        raise DimensionMismatch(
            f"polyhedron of dim {poly.dim} under map with domain dim {matrix.cols}"
        )
    r = rank(matrix)
    if r < matrix.rows:
        raise NotSurjective(r, matrix.rows)

    cur = HPolyhedron(poly.dim, poly.rows)
    mults: list[dict[int, Fraction]] = [{k: _ONE} for k in range(len(poly.rows))]
    for xi in kernel_basis(matrix):
        if all(row.a.dot(xi) == 0 for row in cur.rows):
            continue
        cur, step_certs = eliminate_direction(cur, xi)
        mults = [_compose(cert.as_dict(), mults) for cert in step_certs]
        reduce_now = (reduce_intermediate is True or
                      (reduce_intermediate is None and len(cur.rows) >= AUTO_REDUCE_ROWS))
        if reduce_now and cur.rows:
            keep = irredundant_indices(cur)
            cur = HPolyhedron(cur.dim, tuple(cur.rows[k] for k in keep))
            mults = [mults[k] for k in keep]

    inverse = right_inverse(matrix)
    pairs = []
    for row, m in zip(cur.rows, mults):
        g = inverse.left_apply(row.a)
        pairs.append((IneqRow(g, row.b), m))
    normalized = normalize_with_payload(pairs, _scale_mults)
    out = HPolyhedron(matrix.rows, tuple(row for row, _ in normalized))
    final_mults = [m for _, m in normalized]
    if minimize and out.rows:
        keep = irredundant_indices(out)
        out = HPolyhedron(out.dim, tuple(out.rows[k] for k in keep))
        final_mults = [final_mults[k] for k in keep]
    certs = [_cert_from_dict(m, functional=row.a) for row, m in zip(out.rows, final_mults)]
    return out, certs


def image_onto_range(lin_map: LinMap, poly: HPolyhedron, minimize: bool = False):
    """Image of a possibly non-surjective map, in coordinates of its range.

    Convenience wrapper beyond the surjective statement: picks the
    canonical (rref) basis of the range, rewrites the map onto that
    basis, and applies `image`.  Returns ``(image, certificates, basis)``
    where ``basis`` is an r x codomain matrix whose rows span the range;
    a result point c corresponds to the codomain point ``basisᵀ·c``.
    """
    matrix = lin_map.matrix
    reduced, pivots = rref(matrix.transpose())
    r = len(pivots)
    basis = QMatrix(r, matrix.rows, reduced.data[: r * matrix.rows])
    basis_t = basis.transpose()
    columns = []
    for j in range(matrix.cols):
        coords = solve_affine(basis_t, matrix.column(j))
        assert coords is not None  # columns of the map lie in its range
        columns.append(coords)
    data = tuple(columns[j][i] for i in range(r) for j in range(matrix.cols))
    restricted = LinMap(QMatrix(r, matrix.cols, data))
    out, certs = image(restricted, poly, minimize=minimize)
    return out, certs, basis


def preimage(lin_map: LinMap, poly: HPolyhedron) -> HPolyhedron:
    """The inverse image: each row's functional composes with the map.

    No surjectivity is needed; a row ``(g, b)`` of the input becomes
    ``(g∘T, b)``, and membership satisfies
    ``contains(result, x) == contains(poly, T·x)`` at every point.
    """
    matrix = lin_map.matrix
    if poly.dim != matrix.rows:
        raise DimensionMismatch(
            f"polyhedron of dim {poly.dim} under map with codomain dim {matrix.rows}"
        )
    rows = tuple(IneqRow(matrix.left_apply(row.a), row.b) for row in poly.rows)
    return normalize_rows(HPolyhedron(matrix.cols, rows))


def check_certificate(poly: HPolyhedron, lin_map: LinMap, row: IneqRow,
                      cert: Certificate) -> bool:
    """Audit one certificate exactly.

    True iff all multipliers are nonnegative, the combination of the
    input functionals equals the row's functional composed with the map,
    and the combination of the bounds equals the row's bound.  Indices
    outside ``poly.rows`` raise IndexError.
    """
    for k, _ in cert.multipliers:
        if not 0 <= k < len(poly.rows):
            raise IndexError(f"certificate multiplier index {k} out of range")
    if any(c < 0 for _, c in cert.multipliers):
        return False
    if cert.functional is not None and cert.functional != row.a:
        return False
    combo_a = QVector.zeros(poly.dim)
    combo_b = _ZERO
    for k, c in cert.multipliers:
        combo_a = combo_a + poly.rows[k].a.scale(c)
        combo_b += c * poly.rows[k].b
    pulled = lin_map.matrix.left_apply(row.a)
    return combo_a == pulled and combo_b == row.b
