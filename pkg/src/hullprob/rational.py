"""Exact rational plumbing: string round-trips and integer square-root helpers.

Coordinates, probabilities and thresholds are :class:`fractions.Fraction`
throughout the library; the stdlib type already guarantees lowest terms and
a positive denominator, so it is used directly as the ``Rational`` substrate.
"""

from __future__ import annotations

import re
from decimal import Decimal, localcontext
from fractions import Fraction
from math import isqrt

_RATIONAL_RE = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"n"`` or ``"n/d"`` into an exact Fraction.

    Raises ValueError on anything else (floats are rejected on purpose:
    instance files carry exact values only).
    """
    if isinstance(text, int):
        return Fraction(text)
    m = _RATIONAL_RE.match(str(text))
    if not m:
        raise ValueError(f"not a rational string: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(num, den)


def format_rational(q: Fraction) -> str:
    """Canonical string form: ``"n"`` for integers, else ``"n/d"``."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def to_decimal_str(q: Fraction, significant: int = 12) -> str:
    """Advisory decimal rendering with the given number of significant digits."""
    q = Fraction(q)
    with localcontext() as ctx:
        ctx.prec = significant
        d = Decimal(q.numerator) / Decimal(q.denominator)
    return str(d)


def ceil_div(a: int, b: int) -> int:
    """Exact ceiling of a/b for integers, b > 0."""
    if b <= 0:
        raise ValueError("ceil_div needs a positive divisor")
    return -((-a) // b)


def ceil_fraction(q: Fraction) -> int:
    return ceil_div(q.numerator, q.denominator)


def floor_fraction(q: Fraction) -> int:
    return q.numerator // q.denominator


def floor_sqrt(q: Fraction) -> int:
    """Largest integer m with m*m <= q (q >= 0)."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("floor_sqrt of a negative value")
    # isqrt(floor(q)) can be off by one for non-integers; verify and adjust.
    m = isqrt(q.numerator // q.denominator)
    while Fraction((m + 1) * (m + 1)) <= q:
        m += 1
    while Fraction(m * m) > q:
        m -= 1
    return m


def ceil_sqrt(q: Fraction) -> int:
    """Smallest integer m with m*m >= q (q >= 0)."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("ceil_sqrt of a negative value")
    m = floor_sqrt(q)
    if Fraction(m * m) == q:
        return m
    return m + 1
