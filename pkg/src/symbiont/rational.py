"""Exact rational values.

Every quantity in the engine is a :class:`fractions.Fraction`: arbitrary
precision, stored in lowest terms with a positive denominator, so results
like 13/6 survive every pipeline stage without rounding.  This module adds
the boundary helpers (parsing "p/q" strings, canonical formatting).
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InputError

Rational = Fraction


def as_rational(value) -> Fraction:
    """Coerce an int, "p/q" / integer string, or Fraction to a Fraction.

    Floats are rejected: they would smuggle binary rounding into an exact
    pipeline.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InputError(f"not a rational value: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational literal: {value!r} ({exc})") from None
    raise InputError(f"not a rational value: {value!r}")


def format_rational(value: Fraction) -> str:
    """Canonical string form: "p/q" in lowest terms, or "p" for integers."""
    f = Fraction(value)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def approx(value: Fraction, digits: int = 6) -> str:
    """Decimal approximation for human-facing rendering only."""
    return f"{float(value):.{digits}g}"
