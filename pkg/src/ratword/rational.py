"""Exact rational values and shrinking rational enclosures of 1/e.

Every quantity in this library is an exact ``fractions.Fraction``; no
floating point enters any computation.  The one irrational constant the
library needs is 1/e, whose unit window (1/e - 1, 1/e) separates the
fractional and integer parts of the signed factorial-base representation.
1/e is never materialized.  It is represented by rational enclosures taken
from the alternating series

    sum_{i >= 0} (-1)^i / i!  ->  1/e,

whose consecutive partial sums S_{m-1}, S_m straddle the limit with gap
exactly 1/m!.  Because 1/e is irrational, any comparison of a rational
against it resolves after finitely many refinements.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

#: The rational number type used throughout.  ``fractions.Fraction`` already
#: enforces the canonical form the library relies on: positive denominator,
#: gcd(|num|, den) = 1, and zero stored as 0/1.
Rational = Fraction

RationalLike = Union[Fraction, int]


@dataclass(frozen=True)
class Enclosure:
    """Rational interval lo < 1/e < hi of width exactly 1/order!."""

    lo: Fraction
    hi: Fraction
    order: int

    def __post_init__(self) -> None:
        if self.lo >= self.hi:
            raise ValueError("enclosure must satisfy lo < hi")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo


def refine_enclosures(start: int = 2) -> Iterator[Enclosure]:
    """Yield enclosures of 1/e for m = start, start + 1, ... (each nested
    strictly inside the previous one).

    The m-th enclosure has endpoints min/max of the partial sums S_{m-1} and
    S_m, hence width exactly 1/m!.
    """
    if start < 2:
        raise ValueError("enclosure order must be at least 2")
    s_prev = Fraction(0)  # S_1 = 1 - 1/1!
    term = Fraction(-1)
    m = 1
    while True:
        m += 1
        term = -term / m
        s_curr = s_prev + term
        if m >= start:
            yield Enclosure(min(s_prev, s_curr), max(s_prev, s_curr), m)
        s_prev = s_curr


def inv_e_enclosure(m: int) -> Enclosure:
    """Enclosure of 1/e of width exactly 1/m!; requires m >= 2."""
    return next(refine_enclosures(m))


def cmp_with_inv_e(q: RationalLike) -> int:
    """-1 if q < 1/e, +1 if q > 1/e.

    q is rational and 1/e is not, so equality cannot occur and successive
    refinement always decides.
    """
    q = Fraction(q)
    for enc in refine_enclosures():
        if q <= enc.lo:
            return -1
        if q >= enc.hi:
            return 1
    raise AssertionError("unreachable")


def in_fractional_window(q: RationalLike) -> bool:
    """True iff q lies strictly inside (1/e - 1, 1/e)."""
    q = Fraction(q)
    return cmp_with_inv_e(q) < 0 and cmp_with_inv_e(q + 1) > 0


def parse_rational(text: str) -> Fraction:
    """Parse "num/den" with optional sign, a plain integer, or an exact
    decimal literal such as "0.5".

    A zero denominator is rejected.
    """
    try:
        return Fraction(text.strip())
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in rational literal {text!r}") from None
    except ValueError:
        raise ValueError(f"malformed rational literal {text!r}") from None


def format_rational(q: RationalLike) -> str:
    """Canonical "num/den" form, with "/den" omitted when the denominator is 1."""
    return str(Fraction(q))
