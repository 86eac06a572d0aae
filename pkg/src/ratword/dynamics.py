"""Commuting permutation dynamics on finite uniform spaces.

Permutations of {0..N-1} stand in for measure-preserving transformations:
on a uniform space every bijection preserves the measure |A|/N exactly, so
"positive measure" is decidable by counting.  Generators are indexed by the
nonzero integers of a window; a located word acts by composing generator
powers (digit d at position t applies generator t exactly d times), a finite
index set acts by composing one generator per element, and recurrence search
walks all dominated words over the window in a canonical order until the
target set meets all of its preimages with positive measure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, NamedTuple, Optional, Sequence

from .codec import FactorialWord, decode, encode

Perm = tuple

RESTRICTIONS = ("full", "positive-only", "negative-only")


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def compose(outer: Perm, inner: Perm) -> Perm:
    """The permutation x -> outer[inner[x]]."""
    return tuple(outer[i] for i in inner)


def perm_power(p: Perm, exponent: int) -> Perm:
    if exponent < 0:
        raise ValueError("negative powers are never needed; digits are positive")
    result = identity_perm(len(p))
    for _ in range(exponent):
        result = compose(p, result)
    return result


def is_permutation(p: Sequence[int], n: int) -> bool:
    return len(p) == n and sorted(p) == list(range(n))


def rotation(size: int, amount: int) -> Perm:
    """The rotation x -> x + amount (mod size)."""
    return tuple((x + amount) % size for x in range(size))


def preimage(perm: Perm, subset: Iterable[int]) -> frozenset:
    """{x : perm(x) in subset}; same size as subset for a bijection."""
    pool = set(subset)
    return frozenset(x for x in range(len(perm)) if perm[x] in pool)


@dataclass(frozen=True)
class PermutationSpace:
    """Finite uniform probability space on the points 0..size-1."""

    size: int

    def __post_init__(self) -> None:
        if self.size < 1:
            raise ValueError("space needs at least one point")

    @property
    def points(self) -> range:
        return range(self.size)

    def measure(self, subset: Iterable[int]) -> Fraction:
        return Fraction(len(set(subset)), self.size)


class GeneratorFamily:
    """One permutation generator per index in {-window..window} \\ {0}.

    Measure preservation is automatic (bijections on a uniform space);
    commutation within and across families is checked by check_commuting.
    The family is immutable after construction.
    """

    __slots__ = ("space", "window", "generators", "index")

    def __init__(self, space: PermutationSpace,
                 generators: Mapping[int, Sequence[int]], index: int = 1):
        gens = {int(n): tuple(p) for n, p in dict(generators).items()}
        if not gens:
            raise ValueError("at least one generator required")
        if 0 in gens:
            raise ValueError("generator index 0 is not allowed")
        window = max(abs(n) for n in gens)
        missing = [n for n in range(-window, window + 1) if n and n not in gens]
        if missing:
            raise ValueError(f"window {window} incomplete: missing indices {missing}")
        for n, p in gens.items():
            if not is_permutation(p, space.size):
                raise ValueError(
                    f"generator {n} is not a permutation of 0..{space.size - 1}")
        self.space = space
        self.window = window
        self.generators = MappingProxyType(gens)
        self.index = index

    @classmethod
    def from_rotations(cls, space: PermutationSpace, amounts,
                       *, window: Optional[int] = None, index: int = 1) -> "GeneratorFamily":
        """Family of rotations; amounts maps index -> amount, or is a single
        amount applied to every index of the given window."""
        if isinstance(amounts, int):
            if window is None:
                raise ValueError("window is required with a uniform amount")
            amounts = {n: amounts for n in range(-window, window + 1) if n}
        gens = {n: rotation(space.size, a) for n, a in dict(amounts).items()}
        return cls(space, gens, index=index)

    def __repr__(self) -> str:
        return (f"GeneratorFamily(size={self.space.size}, window={self.window}, "
                f"index={self.index})")


def check_commuting(families: Sequence[GeneratorFamily]) -> None:
    """Raise when any two generators, within or across the families, fail to
    commute on some point."""
    perms = [p for fam in families for p in fam.generators.values()]
    for i, p in enumerate(perms):
        for q in perms[i + 1:]:
            if compose(p, q) != compose(q, p):
                raise ValueError("generators do not pairwise commute")


def ip_transform(alpha: Iterable[int], family: GeneratorFamily) -> Perm:
    """Composition of one generator per element of the finite index set alpha
    (positive indices only; the order is immaterial for commuting generators)."""
    idx = sorted(set(alpha))
    if not idx:
        raise ValueError("index set must be nonempty")
    if idx[0] < 1:
        raise ValueError("index set must contain positive integers only")
    if idx[-1] > family.window:
        raise ValueError(f"index {idx[-1]} outside window {family.window}")
    result = identity_perm(family.space.size)
    for t in idx:
        result = compose(family.generators[t], result)
    return result


def apply_rational(word, family: GeneratorFamily) -> Perm:
    """Permutation of a located word: digit d at position t contributes the
    d-th power of generator t.  The empty word is the identity."""
    if not isinstance(word, FactorialWord):
        word = FactorialWord(word)
    result = identity_perm(family.space.size)
    for t, d in word.items():
        if abs(t) > family.window:
            raise ValueError(f"position {t} outside window {family.window}")
        result = compose(perm_power(family.generators[t], d), result)
    return result


def search_words(window: int, restrict: str = "full") -> Iterator[FactorialWord]:
    """All nonempty dominated words with domain inside the window: smallest
    domains first, then lexicographic in (position tuple, digit tuple).

    The fixed total order makes every search witness canonical.
    """
    if window < 1:
        raise ValueError("window must be positive")
    if restrict == "full":
        positions = [n for n in range(-window, window + 1) if n]
    elif restrict == "positive-only":
        positions = list(range(1, window + 1))
    elif restrict == "negative-only":
        positions = list(range(-window, 0))
    else:
        raise ValueError(f"restrict must be one of {RESTRICTIONS}, got {restrict!r}")
    for size in range(1, len(positions) + 1):
        for dom in itertools.combinations(positions, size):
            for digits in itertools.product(*(range(1, abs(t) + 1) for t in dom)):
                yield FactorialWord(zip(dom, digits))


class RecurrenceWitness(NamedTuple):
    word: FactorialWord
    value: Fraction
    measure: Fraction


def recurrence_search(families: Sequence[GeneratorFamily], target: Iterable[int],
                      window: int, restrict: str = "full") -> Optional[RecurrenceWitness]:
    """First dominated word w (canonical order) whose preimages all return to
    the target with positive measure:

        measure(target ∩ ⋂_j (T_j^w)^{-1}(target)) > 0,

    returned with the word's rational value and the exact measure.  None when
    the window is exhausted.  Requires a nonempty target, families sharing one
    space with windows >= the search window, and commuting generators.
    """
    families = list(families)
    if not families:
        raise ValueError("at least one family required")
    space = families[0].space
    if any(f.space != space for f in families):
        raise ValueError("families must share one space")
    pool = frozenset(target)
    if not pool:
        raise ValueError("target set must have positive measure")
    if not pool <= set(space.points):
        raise ValueError("target contains points outside the space")
    if any(window > f.window for f in families):
        raise ValueError("search window exceeds a family window")
    check_commuting(families)
    for word in search_words(window, restrict):
        hit = pool
        for fam in families:
            perm = apply_rational(word, fam)
            hit = frozenset(x for x in hit if perm[x] in pool)
            if not hit:
                break
        if hit:
            return RecurrenceWitness(word, decode(word), space.measure(hit))
    return None


def ip_to_rational(choices: Mapping[int, int], alpha: Iterable[int],
                   family: GeneratorFamily) -> tuple:
    """Collapse an index-set composition to a single rational power.

    choices fixes one dominated digit per position (1 <= q_t <= |t|).  An odd
    element 2t-1 of alpha applies generator t at power q_t; an even element 2t
    applies generator -t at power q_{-t}.  The located word with exactly those
    digits has some value q, and by uniqueness of words the composition equals
    the action of q.  Returns (q, pointwise-equality), the latter checked
    against apply_rational(encode(q)) and True on every commuting instance.
    """
    idx = sorted(set(alpha))
    if not idx:
        raise ValueError("index set must be nonempty")
    if idx[0] < 1:
        raise ValueError("index set must contain positive integers only")
    digits = {}
    composed = identity_perm(family.space.size)
    for a in idx:
        t = (a + 1) // 2 if a % 2 else -(a // 2)
        if abs(t) > family.window:
            raise ValueError(f"index {a} needs generator {t} outside window {family.window}")
        if t not in choices:
            raise ValueError(f"no digit chosen for position {t}")
        d = choices[t]
        if not isinstance(d, int) or not 1 <= d <= abs(t):
            raise ValueError(f"digit {d!r} at position {t} violates 1..{abs(t)}")
        digits[t] = d
        composed = compose(perm_power(family.generators[t], d), composed)
    value = decode(FactorialWord(digits))
    equal = composed == apply_rational(encode(value), family)
    return value, equal


def parse_generator_file(text: str, size: int) -> tuple:
    """Parse a generator description.

    One line per index:  "n: p0 p1 ... p_{N-1}"  (explicit image list)
                         "n: rot a"              (rotation by a on Z/size)
    Optional target set: "A: i1 i2 ..."
    Blank lines and lines starting with "#" are ignored.

    Returns (generators dict, target frozenset or None); family validation
    happens in GeneratorFamily.
    """
    generators = {}
    target = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        head, sep, tail = stripped.partition(":")
        if not sep:
            raise ValueError(f"line {lineno}: expected 'index: ...' or 'A: ...'")
        head = head.strip()
        fields = tail.split()
        if head == "A":
            try:
                target = frozenset(int(x) for x in fields)
            except ValueError:
                raise ValueError(f"line {lineno}: non-integer point in target set") from None
            continue
        try:
            n = int(head)
        except ValueError:
            raise ValueError(f"line {lineno}: bad generator index {head!r}") from None
        if n in generators:
            raise ValueError(f"line {lineno}: duplicate generator index {n}")
        if len(fields) == 2 and fields[0] == "rot":
            try:
                amount = int(fields[1])
            except ValueError:
                raise ValueError(f"line {lineno}: bad rotation amount {fields[1]!r}") from None
            generators[n] = rotation(size, amount)
        else:
            try:
                images = tuple(int(x) for x in fields)
            except ValueError:
                raise ValueError(f"line {lineno}: non-integer image in list") from None
            if not is_permutation(images, size):
                raise ValueError(
                    f"line {lineno}: image list is not a permutation of 0..{size - 1}")
            generators[n] = images
    if not generators:
        raise ValueError("no generator lines found")
    return generators, target
