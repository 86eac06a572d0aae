"""Signed factorial-base words: the bijection between rationals and
dominated located words.

A located word is a finite map from nonzero integer positions to digits.
Position t carries the exact place value

    t < 0:   (-1)^(-t) / (-t + 1)!     (fractional places)
    t > 0:   (-1)^(t+1) * t!           (integer places)

and every stored digit d satisfies 1 <= d <= |t| (the dominated-digit
condition).  Under that bound each rational has exactly one word.  The
fractional places alone always sum to a value strictly inside the unit
window (1/e - 1, 1/e): the extreme digit choices give the alternating tails
that converge to the window's endpoints, and a finite word never attains
them.  The integer part of q is therefore the unique z with q - z in the
window, and both parts are peeled digit by digit with exact modular
arithmetic.
"""

from __future__ import annotations

import math
from collections.abc import Mapping
from fractions import Fraction
from typing import Iterable, Iterator, Tuple, Union

from .rational import RationalLike, refine_enclosures


class InvalidWordError(ValueError):
    """A mapping or literal violates the located-word invariants."""


class NotRepresentableError(ValueError):
    """encode_fraction received a value outside (1/e - 1, 1/e)."""


DigitItems = Union[Mapping, Iterable[Tuple[int, int]]]


class FactorialWord(Mapping):
    """Immutable located word: a finite map {position -> digit}.

    Positions are nonzero integers, digits satisfy 1 <= d <= |position|, and
    the empty word is the unique representation of 0.  Iteration runs in
    ascending position order, so serialized forms are canonical.
    """

    __slots__ = ("_digits",)

    def __init__(self, digits: DigitItems = ()):
        items = dict(digits)
        for t, d in items.items():
            if not isinstance(t, int) or t == 0:
                raise InvalidWordError(f"position must be a nonzero integer, got {t!r}")
            if not isinstance(d, int) or not 1 <= d <= abs(t):
                raise InvalidWordError(
                    f"digit at position {t} must lie in 1..{abs(t)}, got {d!r}")
        self._digits = dict(sorted(items.items()))

    def __getitem__(self, position: int) -> int:
        return self._digits[position]

    def __iter__(self) -> Iterator[int]:
        return iter(self._digits)

    def __len__(self) -> int:
        return len(self._digits)

    def __hash__(self) -> int:
        return hash(frozenset(self._digits.items()))

    def __eq__(self, other) -> bool:
        if isinstance(other, FactorialWord):
            return self._digits == other._digits
        if isinstance(other, Mapping):
            return self._digits == dict(other)
        return NotImplemented

    def __repr__(self) -> str:
        return f"FactorialWord({self._digits!r})"

    def __str__(self) -> str:
        if not self._digits:
            return "0"
        return ",".join(f"{t}:{d}" for t, d in self._digits.items())

    @classmethod
    def from_string(cls, text: str) -> "FactorialWord":
        """Parse comma-separated "position:digit" pairs; "0" is the empty word.

        Rejects duplicate positions, position 0, and out-of-bound digits.
        """
        text = text.strip()
        if text == "0":
            return cls()
        if not text:
            raise InvalidWordError("empty word literal")
        items = []
        for chunk in text.split(","):
            pos_text, sep, digit_text = chunk.partition(":")
            if not sep:
                raise InvalidWordError(f"expected position:digit, got {chunk!r}")
            try:
                item = (int(pos_text), int(digit_text))
            except ValueError:
                raise InvalidWordError(f"non-integer entry in {chunk!r}") from None
            items.append(item)
        positions = [t for t, _ in items]
        if len(set(positions)) != len(positions):
            raise InvalidWordError(f"duplicate positions in {text!r}")
        return cls(items)


def place_value(t: int) -> Fraction:
    """Exact place value of position t (see the module docstring)."""
    if t == 0:
        raise ValueError("position 0 does not exist")
    if t < 0:
        return Fraction((-1) ** (-t), math.factorial(-t + 1))
    return Fraction((-1) ** (t + 1) * math.factorial(t))


def decode(word: DigitItems) -> Fraction:
    """Exact rational value of a located word; the empty word decodes to 0."""
    if not isinstance(word, FactorialWord):
        word = FactorialWord(word)
    return sum((d * place_value(t) for t, d in word.items()), start=Fraction(0))


def split_by_inv_e(q: RationalLike) -> tuple[int, Fraction]:
    """Split q = z + f with z an integer and f strictly inside (1/e - 1, 1/e).

    z is pinned by refining the 1/e enclosure until the ceilings of q - hi
    and q - lo agree.  The window has irrational endpoints and unit length,
    so z is unique and the refinement terminates for every rational q.
    """
    q = Fraction(q)
    for enc in refine_enclosures():
        z = math.ceil(q - enc.hi)
        if z == math.ceil(q - enc.lo):
            return z, q - z
    raise AssertionError("unreachable")


def encode_integer(z: int) -> FactorialWord:
    """Word of an integer, on positive positions only; 0 gives the empty word.

    Digits are peeled least significant place first: the digit at place r is
    ((-1)^(r+1) z) mod (r+1), which makes the signed quotient exactly
    divisible by r + 1.  |z| never grows and eventually reaches 0.
    """
    z = int(z)
    digits = {}
    r = 1
    while z != 0:
        sign = 1 if r % 2 else -1
        d = (sign * z) % (r + 1)
        if d:
            digits[r] = d
        z = (z - sign * d) // (r + 1)
        r += 1
    return FactorialWord(digits)


def encode_fraction(f: RationalLike) -> FactorialWord:
    """Word of a fractional part, on negative positions only.

    Requires f in (1/e - 1, 1/e).  m is the least index with den(f) dividing
    (m+1)!, the scaled value c = f * (m+1)! is an integer, and digits are
    peeled from place -m upward.  The final residual is an integer equal to
    f minus the decoded digits; both lie in a window of length 1, so the
    residual can only be 0 -- anything else signals a value outside the
    window.
    """
    f = Fraction(f)
    if f == 0:
        return FactorialWord()
    m = 1
    while math.factorial(m + 1) % f.denominator:
        m += 1
    c = (f * math.factorial(m + 1)).numerator
    digits = {}
    for s in range(m, 0, -1):
        sign = 1 if s % 2 == 0 else -1
        d = (sign * c) % (s + 1)
        if d:
            digits[-s] = d
        c = (c - sign * d) // (s + 1)
    if c != 0:
        raise NotRepresentableError(
            f"{f} lies outside (1/e - 1, 1/e): residual {c} after digit peeling")
    return FactorialWord(digits)


def encode(q: RationalLike) -> FactorialWord:
    """The unique located word of a rational; decode(encode(q)) == q."""
    z, f = split_by_inv_e(q)
    digits = dict(encode_integer(z))
    digits.update(encode_fraction(f))
    return FactorialWord(digits)
