"""Independent sampled verification of images, preimages and certificates.

Feasibility questions here go through `is_empty` on the original
system, which eliminates *coordinate* directions -- a computation path
disjoint from the kernel-basis path used by `image` whenever the map is
nontrivial.  All verdicts are exact; one failed sample fails a report.

The sample stream is a fixed 64-bit linear congruential generator so
that any implementation of this format reproduces it bit for bit:

    state' = (6364136223846793005 * state + 1442695040888963407) mod 2^64

seeded directly with the spec's seed; each draw advances the state once
and uses the top 48 bits, ``value = lo + ((state' >> 16) mod span)``.
Sample coordinates are rationals ``n / 4`` with the numerator drawn
uniformly from ``[-4*radius, 4*radius]`` (denominator fixed at 4),
drawn vector by vector, coordinate by coordinate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import DimensionMismatch
from .linalg import QVector
from .polyhedron import HPolyhedron, IneqRow, contains, find_point, is_empty
from .projection import Certificate, LinMap, check_certificate

SAMPLE_DENOMINATOR = 4

_LCG_MULT = 6364136223846793005
_LCG_INC = 1442695040888963407
_MASK64 = (1 << 64) - 1

# Caps on the auxiliary boundary / constructive probes, which cost one
# full feasibility run each.
_BOUNDARY_BASE_POINTS = 10
_WITNESS_CHECKS = 10


class Lcg64:
    """The fixed 64-bit LCG behind every sample stream (see module docs)."""

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state * _LCG_MULT + _LCG_INC) & _MASK64
        return self.state

    def int_between(self, lo: int, hi: int) -> int:
        """Uniform-ish integer in [lo, hi] from the top 48 bits of one step."""
        return lo + ((self.next_u64() >> 16) % (hi - lo + 1))


@dataclass(frozen=True)
class SampleSpec:
    """Seeded sampling plan: ``count`` points per draw, coordinates in
    ``[-box_radius, box_radius]`` on the 1/4 grid."""

    seed: int
    count: int = 100
    box_radius: int = 4

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("sample count must be >= 1")
        if self.box_radius < 1:
            raise ValueError("box radius must be >= 1")


def _draw_points(rng: Lcg64, count: int, radius: int, dim: int) -> list[QVector]:
    span = radius * SAMPLE_DENOMINATOR
    points = []
    for _ in range(count):
        coords = tuple(
            Fraction(rng.int_between(-span, span), SAMPLE_DENOMINATOR)
            for _ in range(dim)
        )
        points.append(QVector(coords))
    return points


def sample_points(spec: SampleSpec, dim: int) -> list[QVector]:
    """The deterministic sample stream for a spec, as dim-vectors."""
    return _draw_points(Lcg64(spec.seed), spec.count, spec.box_radius, dim)


def feasible_with_equalities(poly: HPolyhedron, lin_map: LinMap, y: QVector) -> bool:
    """Decide whether some x in the polyhedron satisfies T·x = y.

    The equalities are encoded as inequality pairs and the combined
    system goes through the coordinate-elimination emptiness test.
    """
    matrix = lin_map.matrix
    if poly.dim != matrix.cols:
        raise DimensionMismatch(
            f"polyhedron of dim {poly.dim} under map with domain dim {matrix.cols}"
        )
    if y.dim != matrix.rows:
        raise DimensionMismatch(f"target of dim {y.dim} for codomain of dim {matrix.rows}")
    rows = list(poly.rows)
    for i in range(matrix.rows):
        t_i = matrix.row(i)
        rows.append(IneqRow(t_i, y[i]))
        rows.append(IneqRow(-t_i, -y[i]))
    return not is_empty(HPolyhedron(poly.dim, tuple(rows)))


@dataclass(frozen=True)
class Failure:
    prop: str
    witness: str
    expected: str
    actual: str


@dataclass
class VerificationReport:
    """Aggregated exact check results; empty failures means pass."""

    checks_run: dict[str, int] = field(default_factory=dict)
    failures: list[Failure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, prop: str):
        self.checks_run[prop] = self.checks_run.get(prop, 0) + 1

    def fail(self, prop: str, witness: str, expected: str, actual: str):
        self.failures.append(Failure(prop, witness, expected, actual))

    def check(self, prop: str, ok: bool, witness: str, expected: str = "true",
              actual: str = "false"):
        self.record(prop)
        if not ok:
            self.fail(prop, witness, expected, actual)

    def to_text(self) -> str:
        """One PASS/FAIL line per property group, order-independent."""
        failed = {}
        for f in sorted(self.failures, key=lambda f: (f.prop, f.witness, f.expected, f.actual)):
            failed.setdefault(f.prop, f)
        counts = {f.prop: 0 for f in self.failures}
        for f in self.failures:
            counts[f.prop] += 1
        lines = []
        for prop in sorted(set(self.checks_run) | set(counts)):
            run = self.checks_run.get(prop, 0)
            if prop in failed:
                first = failed[prop]
                lines.append(
                    f"FAIL {prop} {counts[prop]}/{run} checks failed; first witness "
                    f"{first.witness} expected {first.expected} got {first.actual}"
                )
            else:
                lines.append(f"PASS {prop} {run} checks")
        return "\n".join(lines)

    def to_json_dict(self) -> dict:
        return {
            "passed": self.passed,
            "checks_run": {k: self.checks_run[k] for k in sorted(self.checks_run)},
            "failures": [
                {"property": f.prop, "witness": f.witness,
                 "expected": f.expected, "actual": f.actual}
                for f in sorted(self.failures,
                                key=lambda f: (f.prop, f.witness, f.expected, f.actual))
            ],
        }


def _format_point(x: QVector) -> str:
    from .rationals import format_rational

    return "(" + ",".join(format_rational(v) for v in x) + ")"


def verify_image(lin_map: LinMap, poly: HPolyhedron, result: HPolyhedron,
                 certs: Optional[list[Certificate]], spec: SampleSpec) -> VerificationReport:
    """Sampled audit that ``result`` is exactly the image of ``poly``.

    Soundness sends sampled members of the input through the map and
    demands membership in the result.  Completeness takes sampled
    members of the result -- plus projections of samples onto each
    bounding hyperplane, to probe boundaries -- and demands a feasible
    preimage.  A few completeness hits are re-proved constructively by
    extracting an explicit preimage point.  Certificates are audited
    row by row, and cone inputs must yield cone outputs.
    """
    matrix = lin_map.matrix
    if poly.dim != matrix.cols or result.dim != matrix.rows:
        raise DimensionMismatch("image verification dimensions are inconsistent")
    report = VerificationReport()
    rng = Lcg64(spec.seed)

    xs = _draw_points(rng, spec.count, spec.box_radius, poly.dim)
    for x in (x for x in xs if contains(poly, x)):
        y = matrix.apply(x)
        report.check("image-soundness", contains(result, y), _format_point(x),
                     expected="T*x in result", actual="T*x outside result")

    ys = _draw_points(rng, spec.count, spec.box_radius, result.dim)
    hits = [y for y in ys if contains(result, y)]
    for y in hits:
        report.check("image-completeness", feasible_with_equalities(poly, lin_map, y),
                     _format_point(y), expected="feasible preimage", actual="no preimage")

    boundary = []
    seen = {tuple(y.entries) for y in hits}
    for row in result.rows:
        norm_sq = row.a.dot(row.a)
        if norm_sq == 0:
            continue
        for y in ys[:_BOUNDARY_BASE_POINTS]:
            shift = (row.b - row.a.dot(y)) / norm_sq
            probe = y + row.a.scale(shift)
            key = tuple(probe.entries)
            if key not in seen and contains(result, probe):
                seen.add(key)
                boundary.append(probe)
    for y in boundary:
        report.check("image-boundary-completeness",
                     feasible_with_equalities(poly, lin_map, y),
                     _format_point(y), expected="feasible preimage", actual="no preimage")

    for y in hits[:_WITNESS_CHECKS]:
        rows = list(poly.rows)
        for i in range(matrix.rows):
            t_i = matrix.row(i)
            rows.append(IneqRow(t_i, y[i]))
            rows.append(IneqRow(-t_i, -y[i]))
        witness = find_point(HPolyhedron(poly.dim, tuple(rows)))
        ok = (witness is not None and contains(poly, witness)
              and matrix.apply(witness) == y)
        report.check("witness-construction", ok, _format_point(y),
                     expected="explicit preimage point", actual="none constructed")

    if certs is not None:
        for row, cert in zip(result.rows, certs):
            report.check("certificate", check_certificate(poly, lin_map, row, cert),
                         _format_point(row.a), expected="valid combination",
                         actual="invalid combination")

    if poly.is_cone:
        for row in result.rows:
            report.check("cone-preservation", row.b == 0, _format_point(row.a),
                         expected="bound 0", actual=str(row.b))

    return report


def verify_preimage(lin_map: LinMap, poly: HPolyhedron, result: HPolyhedron,
                    spec: SampleSpec) -> VerificationReport:
    """Sampled audit of the pointwise law contains(result, x) == contains(poly, T·x)."""
    matrix = lin_map.matrix
    if poly.dim != matrix.rows or result.dim != matrix.cols:
        raise DimensionMismatch("preimage verification dimensions are inconsistent")
    report = VerificationReport()
    rng = Lcg64(spec.seed)

    xs = _draw_points(rng, spec.count, spec.box_radius, result.dim)
    probes = list(xs)
    seen = {tuple(x.entries) for x in xs}
    for row in result.rows:
        norm_sq = row.a.dot(row.a)
        if norm_sq == 0:
            continue
        for x in xs[:_BOUNDARY_BASE_POINTS]:
            shift = (row.b - row.a.dot(x)) / norm_sq
            probe = x + row.a.scale(shift)
            key = tuple(probe.entries)
            if key not in seen:
                seen.add(key)
                probes.append(probe)
    for x in probes:
        lhs = contains(result, x)
        rhs = contains(poly, matrix.apply(x))
        report.check("preimage-pointwise", lhs == rhs, _format_point(x),
                     expected=f"both sides {str(rhs).lower()}",
                     actual=f"result membership {str(lhs).lower()}")
    return report
