"""H-representation polyhedra over the rationals.

A polyhedron is a finite list of rows ``a·x <= b`` in a fixed ambient
dimension.  An empty row list denotes the whole space.  Infeasible
systems surface the canonical marker row ``0 <= -1``; emptiness is a
query (`is_empty`), never a normal form, so normalization stays cheap
and local to single rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence, TypeVar

from .errors import DimensionMismatch
from .linalg import QMatrix, QVector, kernel_basis, primitivize

_ZERO = Fraction(0)

T = TypeVar("T")


@dataclass(frozen=True)
class IneqRow:
    """One inequality ``a · x <= b``."""

    a: QVector
    b: Fraction

    def holds(self, x: QVector) -> bool:
        return self.a.dot(x) <= self.b

    def scaled(self, s: Fraction) -> "IneqRow":
        return IneqRow(self.a.scale(s), self.b * s)


@dataclass(frozen=True)
class SignPartition:
    """Row indices split by the sign of ``a · xi`` for a direction xi."""

    k_plus: tuple[int, ...]
    k_minus: tuple[int, ...]
    k_zero: tuple[int, ...]


@dataclass(frozen=True)
class HPolyhedron:
    """Intersection of finitely many closed half-spaces.

    Rows are kept exactly as constructed, so files and certificates can
    address them by position; every operation in this package emits its
    *output* in canonical form (see `normalize_rows`).
    """

    dim: int
    rows: tuple[IneqRow, ...]

    def __post_init__(self):
        for row in self.rows:
            if row.a.dim != self.dim:
                raise DimensionMismatch(
                    f"row of dim {row.a.dim} in polyhedron of dim {self.dim}"
                )

    @staticmethod
    def of(dim: int, rows: Iterable[tuple[Sequence, object]]) -> "HPolyhedron":
        """Build from ``(coefficients, bound)`` pairs of ints/strings/Fractions."""
        from .linalg import _coerce

        built = tuple(IneqRow(QVector.of(a), _coerce(b)) for a, b in rows)
        return HPolyhedron(dim, built)

    @staticmethod
    def whole_space(dim: int) -> "HPolyhedron":
        return HPolyhedron(dim, ())

    @property
    def is_cone(self) -> bool:
        """True when every bound is zero (closed under nonnegative scaling)."""
        return all(row.b == 0 for row in self.rows)


def contains(poly: HPolyhedron, x: QVector) -> bool:
    """Exact membership: every row satisfied, boundaries included."""
    if x.dim != poly.dim:
        raise DimensionMismatch(f"point of dim {x.dim} in polyhedron of dim {poly.dim}")
    return all(row.a.dot(x) <= row.b for row in poly.rows)


def sign_partition(poly: HPolyhedron, xi: QVector) -> SignPartition:
    """Split row indices by the exact sign of ``a · xi``."""
    if xi.dim != poly.dim:
        raise DimensionMismatch(f"direction of dim {xi.dim} in polyhedron of dim {poly.dim}")
    plus, minus, zero = [], [], []
    for k, row in enumerate(poly.rows):
        value = row.a.dot(xi)
        if value > 0:
            plus.append(k)
        elif value < 0:
            minus.append(k)
        else:
            zero.append(k)
    return SignPartition(tuple(plus), tuple(minus), tuple(zero))


def normalize_with_payload(
    pairs: Iterable[tuple[IneqRow, T]],
    scale_payload: Callable[[T, Fraction], T],
) -> list[tuple[IneqRow, T]]:
    """Canonicalize rows while carrying a payload (e.g. a certificate).

    Each row is scaled to primitive integer form by a positive factor
    (the payload is rescaled through ``scale_payload``), vacuous rows
    ``0 <= b`` with b >= 0 are dropped, exact duplicates keep their
    first payload, and the survivors are sorted lexicographically by
    (coefficients, bound).  Membership is unchanged at every point.
    """
    seen: dict = {}
    for row, payload in pairs:
        scaled, s = primitivize(row.a.entries + (row.b,))
        a2 = QVector(scaled[:-1])
        b2 = scaled[-1]
        if a2.is_zero() and b2 >= 0:
            continue
        key = (a2.entries, b2)
        if key in seen:
            continue
        seen[key] = (IneqRow(a2, b2), scale_payload(payload, s))
    return [seen[k] for k in sorted(seen)]


def normalize_rows(poly: HPolyhedron) -> HPolyhedron:
    """Canonical form: primitive integer rows, deduplicated and sorted."""
    pairs = normalize_with_payload(((row, None) for row in poly.rows), lambda p, s: p)
    return HPolyhedron(poly.dim, tuple(row for row, _ in pairs))


def intersect(p: HPolyhedron, q: HPolyhedron, minimize: bool = False) -> HPolyhedron:
    """Row concatenation, normalized; optionally irredundant."""
    if p.dim != q.dim:
        raise DimensionMismatch(f"intersecting dim {p.dim} with dim {q.dim}")
    joined = normalize_rows(HPolyhedron(p.dim, p.rows + q.rows))
    return remove_redundancy(joined) if minimize else joined


def _project_out(poly: HPolyhedron, directions: list[QVector],
                 collect_stack: bool = False):
    """Eliminate a family of independent directions, cheapest first.

    Between steps, rows that are provably redundant are dropped: after k
    eliminations any row combining more than k + 1 of the original rows
    is implied by the rest (the classical Fourier-Motzkin acceleration
    bound -- the multiplier vector of an irredundant row is a basic
    solution of a cone cut by k equations, so its support is small), and
    among rows sharing a functional only the tightest bound survives.
    The feasible set is preserved exactly at every step.

    Returns ``(result, stack)`` where the stack lists the ``(system,
    direction)`` pairs actually eliminated, in order, for witness
    back-substitution.  Stops early once an infeasibility marker row
    appears or no rows are left.
    """
    from .projection import eliminate_direction

    q = normalize_rows(poly)
    hist: list[frozenset] = [frozenset((i,)) for i in range(len(q.rows))]
    pending = list(directions)
    stack = []
    steps = 0
    while pending and q.rows:
        if any(row.a.is_zero() for row in q.rows):
            break
        values = [[row.a.dot(xi) for row in q.rows] for xi in pending]
        best = None
        best_cost = None
        for idx in range(len(pending) - 1, -1, -1):
            plus = sum(1 for v in values[idx] if v > 0)
            minus = sum(1 for v in values[idx] if v < 0)
            if plus == 0 and minus == 0:
                pending.pop(idx)  # no row sees this direction
                values.pop(idx)
                continue
            cost = plus * minus
            if best_cost is None or cost <= best_cost:
                best, best_cost = idx, cost
        if best is None:
            break
        xi = pending.pop(best)
        if collect_stack:
            stack.append((q, xi))
        q, certs = eliminate_direction(q, xi)
        steps += 1
        new_hist = [
            frozenset().union(*(hist[m] for m, _ in cert.multipliers))
            for cert in certs
        ]
        keep = [i for i, h in enumerate(new_hist) if len(h) <= steps + 1]
        rows, hist = [], []
        last_a = None
        for i in keep:  # rows are sorted, so the first of an a-group is tightest
            row = q.rows[i]
            if row.a.entries == last_a:
                continue
            last_a = row.a.entries
            rows.append(row)
            hist.append(new_hist[i])
        q = HPolyhedron(q.dim, tuple(rows))
    return q, stack


def is_empty(poly: HPolyhedron) -> bool:
    """Exact feasibility test by eliminating every coordinate direction.

    After all coordinates are eliminated only rows ``0 <= b`` can
    survive; normalization keeps those exactly when b < 0, so any
    surviving row certifies infeasibility.  Over the rationals with
    non-strict inequalities, real and rational feasibility coincide.
    """
    dirs = [QVector.unit(poly.dim, i) for i in range(poly.dim)]
    q, _ = _project_out(poly, dirs)
    return bool(q.rows)


def find_point(poly: HPolyhedron) -> Optional[QVector]:
    """A rational point of the polyhedron, or None when it is empty.

    Eliminates the coordinate directions, then back-substitutes from the
    origin of the fully eliminated (whole-space) system through the
    witness-lifting construction, one direction at a time.
    """
    from .projection import _lift_unchecked

    dirs = [QVector.unit(poly.dim, i) for i in range(poly.dim)]
    q, stack = _project_out(poly, dirs, collect_stack=True)
    if q.rows:
        return None
    x = QVector.zeros(poly.dim)
    for prev, xi in reversed(stack):
        x = _lift_unchecked(prev, xi, x)
    return x


def linear_sup(poly: HPolyhedron, objective: QVector):
    """Exact least upper bound of ``objective · x`` over the polyhedron.

    Returns ``("finite", value)``, ``("unbounded", None)`` or
    ``("empty", None)``.  Computed by eliminating a basis of the
    orthogonal complement of the objective: every surviving row is then
    a scalar multiple of the objective, and the positive multiples give
    upper bounds whose minimum is the supremum.
    """
    if objective.dim != poly.dim:
        raise DimensionMismatch(
            f"objective of dim {objective.dim} over polyhedron of dim {poly.dim}"
        )
    if objective.is_zero():
        return ("empty", None) if is_empty(poly) else ("finite", _ZERO)
    dirs = kernel_basis(QMatrix(1, poly.dim, objective.entries))
    q, _ = _project_out(poly, dirs)
    norm_sq = objective.dot(objective)
    upper = None
    lower = None
    for row in q.rows:
        if row.a.is_zero():
            return ("empty", None)
        mu = row.a.dot(objective) / norm_sq
        bound = row.b / mu
        if mu > 0:
            upper = bound if upper is None else min(upper, bound)
        else:
            lower = bound if lower is None else max(lower, bound)
    if lower is not None and upper is not None and lower > upper:
        return ("empty", None)
    if upper is None:
        return ("unbounded", None)
    return ("finite", upper)


def irredundant_indices(poly: HPolyhedron) -> list[int]:
    """Indices (into ``poly.rows``) of a membership-equivalent irredundant subset.

    A row is redundant exactly when the supremum of its functional over
    the remaining rows never exceeds its bound; rows are examined in
    stored order against the shrinking survivor set, which is sound
    because dropping rows only enlarges the feasible set.
    """
    kept = list(range(len(poly.rows)))
    i = 0
    while i < len(kept):
        row = poly.rows[kept[i]]
        rest = HPolyhedron(poly.dim, tuple(poly.rows[k] for j, k in enumerate(kept) if j != i))
        kind, sup = linear_sup(rest, row.a)
        if kind == "empty" or (kind == "finite" and sup <= row.b):
            kept.pop(i)
        else:
            i += 1
    return kept


def remove_redundancy(poly: HPolyhedron) -> HPolyhedron:
    """Drop rows implied by the others; membership is pointwise unchanged.

    The result's rows are a subset of the canonical (normalized) rows of
    the input.
    """
    q = normalize_rows(poly)
    kept = irredundant_indices(q)
    return HPolyhedron(q.dim, tuple(q.rows[k] for k in kept))
