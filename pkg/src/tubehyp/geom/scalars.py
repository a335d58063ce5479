"""Exact scalar helpers: rational coercion, formatting, and sqrt comparisons.

All planar predicates on the slit/polygon obstacle class run on
`fractions.Fraction` end to end.  Floats enter only for bump obstacles
and optimizer internals.  Quadratic quantities (ellipse extents, slice
half-widths) are compared without ever materializing square roots: we
compare squares with explicit sign analysis.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Rat = Fraction
ScalarLike = Union[Fraction, int, str]


def as_frac(x: ScalarLike) -> Fraction:
    """Coerce to an exact rational. Decimal strings convert without rounding."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected exact scalar, got {type(x).__name__}")


def fmt_frac(q: Fraction) -> str:
    """Canonical text form: "p/q" when the denominator is not 1, else "p"."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_frac(text: str) -> Fraction:
    """Parse "p/q" or a decimal literal into an exact rational."""
    return Fraction(text.strip())


def cmp_sqrt(s: Fraction, r: Fraction) -> int:
    """Sign of sqrt(s) - r for rational s >= 0, without floating point."""
    if s < 0:
        raise ValueError("cmp_sqrt needs a nonnegative radicand")
    if r < 0:
        return 1
    d = s - r * r
    return (d > 0) - (d < 0)


def cmp_lin_sqrt(alpha: Fraction, beta: Fraction, s: Fraction, r: Fraction) -> int:
    """Sign of (alpha + beta*sqrt(s)) - r for rational s >= 0."""
    if s < 0:
        raise ValueError("cmp_lin_sqrt needs a nonnegative radicand")
    d = r - alpha
    if beta == 0 or s == 0:
        return (0 > d) - (0 < d)
    lhs_sq = beta * beta * s
    if beta > 0:
        if d < 0:
            return 1
        return (lhs_sq > d * d) - (lhs_sq < d * d)
    # beta < 0: left side is strictly negative
    if d >= 0:
        return -1
    return (d * d > lhs_sq) - (d * d < lhs_sq)


def frac_min(*xs: Fraction) -> Fraction:
    return min(xs)


def frac_max(*xs: Fraction) -> Fraction:
    return max(xs)
