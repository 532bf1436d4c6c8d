"""Exact images and preimages of H-representation polyhedra under linear maps.

Everything is computed over the rationals with zero tolerance: the
image of a polyhedron under a surjective map (by eliminating a kernel
basis one direction at a time), the preimage under any map (by
composing row functionals), machine-checkable nonnegative-multiplier
certificates for every derived row, and a seeded sampling oracle that
audits results independently.
"""

from .errors import (
    DimensionMismatch,
    KernelNotContained,
    NotSurjective,
    ParseError,
    PolymapError,
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
from .oracle import (
    Lcg64,
    SampleSpec,
    VerificationReport,
    feasible_with_equalities,
    sample_points,
    verify_image,
    verify_preimage,
)
from .polyhedron import (
    HPolyhedron,
    IneqRow,
    SignPartition,
    contains,
    find_point,
    intersect,
    is_empty,
    linear_sup,
    normalize_rows,
    remove_redundancy,
    sign_partition,
)
from .projection import (
    Certificate,
    LinMap,
    check_certificate,
    eliminate_direction,
    factor_through,
    image,
    image_onto_range,
    lift_witness,
    preimage,
)
from .rationals import Rational, format_rational, parse_point, parse_rational

__version__ = "0.1.0"

__all__ = [
    "Certificate",
    "DimensionMismatch",
    "HPolyhedron",
    "IneqRow",
    "KernelNotContained",
    "Lcg64",
    "LinMap",
    "NotSurjective",
    "ParseError",
    "PolymapError",
    "PreconditionViolated",
    "QMatrix",
    "QVector",
    "Rational",
    "SampleSpec",
    "SignPartition",
    "VerificationReport",
    "ZeroDirection",
    "check_certificate",
    "contains",
    "eliminate_direction",
    "factor_through",
    "feasible_with_equalities",
    "find_point",
    "format_rational",
    "image",
    "image_onto_range",
    "intersect",
    "is_empty",
    "kernel_basis",
    "lift_witness",
    "linear_sup",
    "normalize_rows",
    "parse_point",
    "parse_rational",
    "preimage",
    "primitivize",
    "rank",
    "remove_redundancy",
    "right_inverse",
    "rref",
    "sample_points",
    "sign_partition",
    "solve_affine",
    "verify_image",
    "verify_preimage",
]
