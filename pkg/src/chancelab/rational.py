"""Exact rational scalars: strict parsing, formatting and probability range checks.

Every quantity on a verified code path in this package is a `fractions.Fraction`.
Floats are rejected at all entry points; decimal renderings exist only for
plot-data files (see `decimal_str`).
"""

from __future__ import annotations

import re
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction

__all__ = [
    "RationalFormatError",
    "ProbabilityRangeError",
    "parse_rational",
    "format_rational",
    "as_fraction",
    "probability",
    "decimal_str",
]

_RATIONAL_RE = re.compile(r"^\s*(-?\d+)\s*(?:/\s*([1-9]\d*)\s*)?$")


class RationalFormatError(ValueError):
    """A string does not spell an exact rational in ``p/q`` or integer form."""


class ProbabilityRangeError(ValueError):
    """An exact rational lies outside the closed interval [0, 1]."""


def parse_rational(text: str) -> Fraction:
    """Parse a decimal-free ``"p/q"`` or ``"p"`` string into a Fraction.

    Decimal notation is rejected on purpose: a string like ``"0.1"`` has no
    exact binary or rational reading the caller verifiably intended.
    """
    match = _RATIONAL_RE.match(text)
    if match is None:
        raise RationalFormatError(
            f"not an exact rational (expected 'p/q' or integer): {text!r}"
        )
    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) else 1
    return Fraction(numerator, denominator)


def format_rational(value: Fraction) -> str:
    """Render a Fraction as a decimal-free ``"p/q"`` string, denominator always explicit."""
    return f"{value.numerator}/{value.denominator}"


def as_fraction(value: int | str | Fraction) -> Fraction:
    """Coerce an int, ``"p/q"`` string, or Fraction to a Fraction.

    Floats (and bools) are refused: silently converting them would smuggle
    rounding error into paths that promise exactness.
    """
    if isinstance(value, bool):
        raise RationalFormatError(f"booleans are not rationals: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise RationalFormatError(
        f"cannot interpret {type(value).__name__} as an exact rational: {value!r}"
    )


def probability(value: int | str | Fraction) -> Fraction:
    """Coerce to a Fraction and require 0 <= value <= 1."""
    q = as_fraction(value)
    if q < 0 or q > 1:
        raise ProbabilityRangeError(f"probability out of [0, 1]: {q}")
    return q


def decimal_str(value: Fraction, significant_digits: int = 12) -> str:
    """Decimal rendering of an exact rational, round-half-even.

    Used only by plot-data emitters; never feed the result back into a
    verified computation.
    """
    with localcontext() as ctx:
        ctx.prec = significant_digits
        ctx.rounding = ROUND_HALF_EVEN
        return str(Decimal(value.numerator) / Decimal(value.denominator))
