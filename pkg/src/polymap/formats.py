"""JSON file formats for polyhedra, maps, certificates and reports.

All rationals travel as strings in the exact text syntax; JSON numbers
are rejected so no floating-point value can sneak into an exact
pipeline.  Row order is preserved on input (certificates address rows
by position) and canonical on output.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Optional

from .errors import ParseError
from .linalg import QMatrix, QVector
from .polyhedron import HPolyhedron, IneqRow
from .projection import Certificate, LinMap
from .rationals import format_rational, parse_rational


def _byte_offset(text: str, token) -> int:
    """Best-effort byte offset of a token's first occurrence in the source."""
    if isinstance(token, str):
        probe = json.dumps(token)
        idx = text.find(probe)
        if idx >= 0:
            idx += 1  # past the opening quote
        else:
            idx = text.find(token)
    else:
        idx = text.find(json.dumps(token))
    if idx < 0:
        return 0
    return len(text[:idx].encode("utf-8"))


def _load_json(text: str) -> object:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"invalid JSON at byte {exc.pos}: {exc.msg}", offset=exc.pos
        ) from exc


def _rational_field(text: str, value, where: str) -> Fraction:
    if not isinstance(value, str):
        raise ParseError(
            f"expected a rational string for {where}, got {value!r} at byte "
            f"{_byte_offset(text, value)} (write rationals as strings, e.g. \"1/2\")",
            token=repr(value), offset=_byte_offset(text, value),
        )
    return parse_rational(value, offset=_byte_offset(text, value))


def _int_field(obj: dict, key: str, where: str) -> int:
    value = obj.get(key)
    if not isinstance(value, int) or isinstance(value, bool) or value < 0:
        raise ParseError(f"expected a nonnegative integer {key!r} in {where}, got {value!r}")
    return value


def parse_polyhedron(text: str) -> HPolyhedron:
    """Parse ``{"dim": n, "rows": [{"a": [...], "b": ...}, ...]}``."""
    doc = _load_json(text)
    if not isinstance(doc, dict):
        raise ParseError("polyhedron file must be a JSON object")
    dim = _int_field(doc, "dim", "polyhedron")
    rows_doc = doc.get("rows")
    if not isinstance(rows_doc, list):
        raise ParseError("polyhedron field 'rows' must be a list")
    rows = []
    for idx, row_doc in enumerate(rows_doc):
        if not isinstance(row_doc, dict) or "a" not in row_doc or "b" not in row_doc:
            raise ParseError(f"row {idx} must be an object with fields 'a' and 'b'")
        a_doc = row_doc["a"]
        if not isinstance(a_doc, list) or len(a_doc) != dim:
            raise ParseError(f"row {idx} coefficient list must have exactly dim={dim} entries")
        a = QVector(tuple(_rational_field(text, v, f"row {idx} coefficient") for v in a_doc))
        b = _rational_field(text, row_doc["b"], f"row {idx} bound")
        rows.append(IneqRow(a, b))
    return HPolyhedron(dim, tuple(rows))


def render_polyhedron(poly: HPolyhedron) -> str:
    doc = {
        "dim": poly.dim,
        "rows": [
            {"a": [format_rational(v) for v in row.a], "b": format_rational(row.b)}
            for row in poly.rows
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def parse_linmap(text: str) -> LinMap:
    """Parse ``{"rows": m, "cols": n, "data": [[...], ...]}``."""
    doc = _load_json(text)
    if not isinstance(doc, dict):
        raise ParseError("linear map file must be a JSON object")
    m = _int_field(doc, "rows", "linear map")
    n = _int_field(doc, "cols", "linear map")
    data_doc = doc.get("data")
    if not isinstance(data_doc, list) or len(data_doc) != m:
        raise ParseError(f"linear map field 'data' must be a list of {m} rows")
    flat = []
    for idx, row_doc in enumerate(data_doc):
        if not isinstance(row_doc, list) or len(row_doc) != n:
            raise ParseError(f"linear map data row {idx} must have exactly cols={n} entries")
        for v in row_doc:
            flat.append(_rational_field(text, v, f"data row {idx}"))
    return LinMap(QMatrix(m, n, tuple(flat)))


def render_linmap(lin_map: LinMap) -> str:
    matrix = lin_map.matrix
    doc = {
        "rows": matrix.rows,
        "cols": matrix.cols,
        "data": [
            [format_rational(matrix.entry(i, j)) for j in range(matrix.cols)]
            for i in range(matrix.rows)
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def render_certificates(poly: HPolyhedron, certs: list[Certificate]) -> str:
    """Certificates for the rows of ``poly``, positionally matched."""
    doc = []
    for row, cert in zip(poly.rows, certs):
        doc.append({
            "row": {"a": [format_rational(v) for v in row.a],
                    "b": format_rational(row.b)},
            "multipliers": [
                {"index": k, "coeff": format_rational(c)}
                for k, c in cert.multipliers
            ],
        })
    return json.dumps(doc, indent=2) + "\n"


def parse_certificates(text: str, dim: int) -> tuple[list[IneqRow], list[Certificate]]:
    doc = _load_json(text)
    if not isinstance(doc, list):
        raise ParseError("certificate file must be a JSON list")
    rows, certs = [], []
    for idx, entry in enumerate(doc):
        if not isinstance(entry, dict) or "row" not in entry or "multipliers" not in entry:
            raise ParseError(f"certificate {idx} must have fields 'row' and 'multipliers'")
        row_doc = entry["row"]
        a = QVector(tuple(
            _rational_field(text, v, f"certificate {idx} coefficient")
            for v in row_doc.get("a", [])
        ))
        if a.dim != dim:
            raise ParseError(f"certificate {idx} row must have exactly dim={dim} coefficients")
        b = _rational_field(text, row_doc.get("b"), f"certificate {idx} bound")
        mults = []
        for m_doc in entry["multipliers"]:
            k = m_doc.get("index")
            if not isinstance(k, int) or isinstance(k, bool) or k < 0:
                raise ParseError(f"certificate {idx} multiplier index must be a nonnegative integer")
            mults.append((k, _rational_field(text, m_doc.get("coeff"),
                                             f"certificate {idx} multiplier")))
        rows.append(IneqRow(a, b))
        certs.append(Certificate(multipliers=tuple(mults), functional=a))
    return rows, certs


def parse_point_text(text: str) -> QVector:
    from .rationals import parse_point

    return QVector(parse_point(text))
