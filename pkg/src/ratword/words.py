"""Words over {1..k}, variable words, combinatorial lines, and the template
placement that turns line search into arithmetic-progression extraction.

A word of length n placed on a template of positions t_1 < ... < t_n with
|t_j| >= k reads letter w_j as the digit of place t_j, so its value is
sum_j w_j * place_value(t_j).  The digit bound w_j <= k <= |t_j| makes the
placement itself a valid located word, hence the value map is injective for
a fixed template and compatible with the codec.  Substituting the letters
1..k for the variable of a variable word then sends a combinatorial line to
a k-term arithmetic progression of values: the variable positions contribute
a common step q and the fixed positions a common base.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Collection, Iterable, Iterator, Optional, Union

from .codec import place_value

#: The variable symbol; it sorts after every letter in enumeration order.
UPSILON = "v"

Word = tuple
VariableWord = tuple
Membership = Callable[[Fraction], bool]


@dataclass(frozen=True)
class Template:
    """Strictly increasing nonzero positions t_1 < ... < t_n, all |t_j| >= k."""

    positions: tuple
    k: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "positions", tuple(self.positions))
        if self.k < 1:
            raise ValueError("alphabet size must be positive")
        if not self.positions:
            raise ValueError("template needs at least one position")
        for t in self.positions:
            if t == 0:
                raise ValueError("position 0 is not allowed")
            if abs(t) < self.k:
                raise ValueError(f"position {t} violates |t| >= k = {self.k}")
        if any(a >= b for a, b in zip(self.positions, self.positions[1:])):
            raise ValueError("positions must be strictly increasing")

    def __len__(self) -> int:
        return len(self.positions)


def parse_template(text: str, k: int) -> Template:
    """Parse comma-separated positions, e.g. "-2,3,5"."""
    try:
        positions = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ValueError(f"malformed template {text!r}") from None
    return Template(positions, k)


def format_word(w: Union[Word, VariableWord]) -> str:
    """Concatenated letters with the variable spelled "v" (e.g. "1v2")."""
    return "".join(UPSILON if c == UPSILON else str(c) for c in w)


def parse_word(text: str, k: Optional[int] = None) -> Union[Word, VariableWord]:
    """Inverse of format_word; single-character letters, so alphabets k <= 9."""
    letters = []
    for ch in text.strip():
        if ch == UPSILON:
            letters.append(UPSILON)
        elif ch.isdigit() and ch != "0":
            letters.append(int(ch))
        else:
            raise ValueError(f"bad letter {ch!r} in word {text!r}")
    if not letters:
        raise ValueError("empty word")
    if k is not None and any(c != UPSILON and c > k for c in letters):
        raise ValueError(f"letter exceeds alphabet size {k} in {text!r}")
    return tuple(letters)


def word_value(w: Word, template: Template) -> Fraction:
    """Value sum_j w_j * place_value(t_j) of w placed on the template."""
    if len(w) != len(template.positions):
        raise ValueError(
            f"word length {len(w)} does not match template length {len(template.positions)}")
    for c in w:
        if not isinstance(c, int) or not 1 <= c <= template.k:
            raise ValueError(f"letter {c!r} outside alphabet 1..{template.k}")
    return sum(
        (c * place_value(t) for c, t in zip(w, template.positions)),
        start=Fraction(0))


def line(vw: VariableWord, k: int) -> tuple:
    """The k words of the combinatorial line of vw, in substituted-letter order."""
    if UPSILON not in vw:
        raise ValueError("a variable word must contain the variable symbol")
    for c in vw:
        if c != UPSILON and (not isinstance(c, int) or not 1 <= c <= k):
            raise ValueError(f"letter {c!r} outside alphabet 1..{k}")
    return tuple(
        tuple(letter if c == UPSILON else c for c in vw)
        for letter in range(1, k + 1))


def enumerate_words(n: int, k: int) -> Iterator[Word]:
    """All k^n words of length n in lexicographic order (1 < 2 < ... < k)."""
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    return itertools.product(range(1, k + 1), repeat=n)


def enumerate_variable_words(n: int, k: int) -> Iterator[VariableWord]:
    """All (k+1)^n - k^n variable words of length n, lexicographically with
    the variable symbol sorting after every letter."""
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    symbols = list(range(1, k + 1)) + [UPSILON]
    for candidate in itertools.product(symbols, repeat=n):
        if UPSILON in candidate:
            yield candidate


def find_line(words_set: Collection[Word], k: int) -> Optional[VariableWord]:
    """First variable word (enumeration order) whose full line lies in the set.

    The fixed enumeration order makes the witness canonical; None means the
    set is line-free.
    """
    pool = set(words_set)
    if not pool:
        return None
    lengths = {len(w) for w in pool}
    if len(lengths) != 1:
        raise ValueError("all words must share one length")
    (n,) = lengths
    for vw in enumerate_variable_words(n, k):
        if all(w in pool for w in line(vw, k)):
            return vw
    return None


def word_density(words_set: Collection[Word], n: int, k: int) -> Fraction:
    """|A ∩ W_n| / k^n as an exact rational."""
    count = sum(
        1 for w in set(words_set)
        if len(w) == n and all(isinstance(c, int) and 1 <= c <= k for c in w))
    return Fraction(count, k ** n)


def _as_membership(members) -> Membership:
    if callable(members):
        return members
    pool = frozenset(Fraction(x) for x in members)
    return pool.__contains__


def find_progression_via_lines(
    members: Union[Membership, Iterable],
    template: Template,
) -> Optional[tuple]:
    """Extract a k-term arithmetic progression p, p+q, ..., p+(k-1)q inside a
    set of rationals by searching the template preimage for a combinatorial
    line.

    members is a predicate on Fraction or an explicit collection.  For a line
    witness with variable positions F2 and fixed positions F1 the parameters
    are q = sum_{t in F2} place_value(t), which is nonzero, and
    p = q + sum_{t in F1} w_t * place_value(t): substituting letter i + 1 for
    the variable yields exactly p + i*q.  Every progression point is
    re-verified before returning; None means no line exists in the preimage.
    """
    member = _as_membership(members)
    k = template.k
    n = len(template.positions)
    preimage = {
        w for w in enumerate_words(n, k) if member(word_value(w, template))}
    vw = find_line(preimage, k)
    if vw is None:
        return None
    q = sum(
        (place_value(t) for c, t in zip(vw, template.positions) if c == UPSILON),
        start=Fraction(0))
    p = q + sum(
        (c * place_value(t) for c, t in zip(vw, template.positions) if c != UPSILON),
        start=Fraction(0))
    assert q != 0, "variable positions always contribute a nonzero step"
    for i in range(k):
        if not member(p + i * q):
            raise RuntimeError(
                "membership predicate rejected a progression point on re-check; "
                "predicates must be pure")
    return p, q
