"""Exact rational scalars and their text syntax.

Rationals are plain ``fractions.Fraction`` values: arbitrary precision,
always in lowest terms with a positive denominator, zero stored as 0/1.
This module adds the strict text syntax used by every file format: an
optional sign, decimal digits, optionally followed by ``/`` and a
positive decimal integer -- e.g. ``-3``, ``1/2``, ``7/4``.  No
whitespace, no decimals, no exponents; denominator 0 is rejected.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError

Rational = Fraction

_RATIONAL_RE = re.compile(r"[+-]?[0-9]+(?:/[0-9]+)?\Z")


def parse_rational(token: str, offset: int = 0) -> Fraction:
    """Parse one rational token; ``offset`` locates errors in the source."""
    if not isinstance(token, str) or _RATIONAL_RE.match(token) is None:
        raise ParseError(
            f"invalid rational token {token!r} at byte {offset}",
            token=str(token), offset=offset,
        )
    num, slash, den = token.partition("/")
    if slash and int(den) == 0:
        raise ParseError(
            f"zero denominator in rational {token!r} at byte {offset}",
            token=token, offset=offset,
        )
    return Fraction(int(num), int(den)) if slash else Fraction(int(num))


def format_rational(value: Fraction) -> str:
    """Canonical text form: sign on the numerator, no denominator when 1."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_point(text: str) -> tuple[Fraction, ...]:
    """Parse a comma-separated rational list such as ``1/2,0,-3``.

    The empty string is the unique point of a 0-dimensional space.
    """
    if text == "":
        return ()
    out = []
    offset = 0
    for token in text.split(","):
        out.append(parse_rational(token, offset=offset))
        offset += len(token.encode("utf-8")) + 1
    return tuple(out)
