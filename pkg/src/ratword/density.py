"""Folner sets in (Q, +) and exact density statistics at finite horizon.

The default Folner sequence is F_n = {k/n! : 0 <= k < n*n!}: an arithmetic
block of n*n! grid points with spacing 1/n! covering [0, n).  Translating it
by s = a/b (lowest terms, b | n!) slides the block by a*n!/b grid steps, so
the symmetric-difference defect is exactly min(2|a|/(bn), 2) and tends to 0:
the sequence really is Folner for (Q, +).  All statistics reported here are
exact rationals over explicit finite horizons; nothing extrapolates a limit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from pathlib import Path
from typing import Callable, Iterable, Optional, Sequence, Union

from .rational import RationalLike, parse_rational

Membership = Callable[[Fraction], bool]
#: A Folner sequence is any callable n -> finite nonempty set of Fractions.
FolnerSequence = Callable[[int], frozenset]


def as_membership(members) -> Membership:
    """Normalize a predicate-or-collection into a membership callable."""
    if callable(members):
        return members
    pool = frozenset(Fraction(x) for x in members)
    return pool.__contains__


@lru_cache(maxsize=None)
def standard_folner(n: int) -> frozenset:
    """F_n = {k/n! : 0 <= k < n*n!}, the library's default Folner sequence."""
    if n < 1:
        raise ValueError("Folner index must be >= 1")
    fact = math.factorial(n)
    return frozenset(Fraction(k, fact) for k in range(n * fact))


def folner_defect(folner: FolnerSequence, n: int, s: RationalLike) -> Fraction:
    """Exact translation defect |(s + F_n) △ F_n| / |F_n|, a value in [0, 2].

    Works on any finite set of rationals: elements are moved to a common
    integer grid first so the set algebra runs on machine integers.
    """
    F = folner(n)
    if not F:
        raise ValueError("Folner set must be nonempty")
    s = Fraction(s)
    scale = reduce(math.lcm, {x.denominator for x in F} | {s.denominator})
    grid = {x.numerator * (scale // x.denominator) for x in F}
    shift = s.numerator * (scale // s.denominator)
    moved = {v + shift for v in grid}
    return Fraction(len(grid ^ moved), len(grid))


@dataclass(frozen=True)
class DensityReport:
    """Exact ratios |A ∩ F_n| / |F_n| for n = 1..horizon together with the
    running supremum over each tail of the report."""

    ratios: tuple  # ((n, Fraction), ...)
    tail_sup: tuple  # (Fraction, ...), aligned with ratios

    def render(self) -> str:
        """Aligned text table."""
        rows = [("n", "ratio", "tail_sup")]
        for (n, ratio), sup in zip(self.ratios, self.tail_sup):
            rows.append((str(n), str(ratio), str(sup)))
        widths = [max(len(row[i]) for row in rows) for i in range(3)]
        return "\n".join(
            "  ".join(cell.rjust(widths[i]) for i, cell in enumerate(row))
            for row in rows)

    def to_csv(self) -> str:
        lines = ["n,ratio,tail_sup"]
        for (n, ratio), sup in zip(self.ratios, self.tail_sup):
            lines.append(f"{n},{ratio},{sup}")
        return "\n".join(lines)


def upper_density_report(members, folner: FolnerSequence = standard_folner,
                         n_max: int = 8) -> DensityReport:
    """Exact |A ∩ F_n| / |F_n| for n = 1..n_max plus running tail suprema.

    These are finite-horizon statistics; no limit is claimed or extrapolated.
    """
    if n_max < 1:
        raise ValueError("horizon must be >= 1")
    member = as_membership(members)
    ratios = []
    for n in range(1, n_max + 1):
        F = folner(n)
        count = sum(1 for x in F if member(x))
        ratios.append((n, Fraction(count, len(F))))
    sups = []
    best = None
    for _, ratio in reversed(ratios):
        best = ratio if best is None else max(best, ratio)
        sups.append(best)
    sups.reverse()
    return DensityReport(tuple(ratios), tuple(sups))


def banach_lower_bound(members, folner: FolnerSequence, n: int,
                       shifts: Sequence[RationalLike]) -> Fraction:
    """Best exact |A ∩ (q + F_n)| / |F_n| over the given shifts q: a certified
    finite-horizon lower bound for the translated (Banach-type) density."""
    member = as_membership(members)
    pool = [Fraction(q) for q in shifts]
    if not pool:
        raise ValueError("at least one shift required")
    F = folner(n)
    best = Fraction(0)
    for q in pool:
        count = sum(1 for x in F if member(q + x))
        best = max(best, Fraction(count, len(F)))
    return best


def ap_search(members, k: int, p_candidates: Iterable[RationalLike],
              q_candidates: Iterable[RationalLike]) -> Optional[tuple]:
    """First (p, q) in candidate order with p + j*q in A for every 0 <= j <= k
    (a progression of k + 1 points).  The witness is re-verified point by
    point before returning; None when the candidates are exhausted."""
    if k < 1:
        raise ValueError("progression length k must be >= 1")
    member = as_membership(members)
    ps = [Fraction(p) for p in p_candidates]
    qs = [Fraction(q) for q in q_candidates]
    if any(q == 0 for q in qs):
        raise ValueError("q candidates must be nonzero")
    for p in ps:
        for q in qs:
            if all(member(p + j * q) for j in range(k + 1)):
                if not all(member(p + j * q) for j in range(k + 1)):
                    raise RuntimeError(
                        "membership predicate rejected the witness on "
                        "re-verification; predicates must be pure")
                return p, q
    return None


def interval_union(intervals: Iterable[tuple], period: Optional[RationalLike] = None) -> Membership:
    """Membership in a union of half-open intervals [a, b), optionally taken
    modulo a positive period (i.e. repeated over every period translate)."""
    spans = [(Fraction(a), Fraction(b)) for a, b in intervals]
    if not spans:
        raise ValueError("at least one interval required")
    if any(a >= b for a, b in spans):
        raise ValueError("intervals must satisfy a < b")
    modulus = None if period is None else Fraction(period)
    if modulus is not None and modulus <= 0:
        raise ValueError("period must be positive")

    def member(x: Fraction) -> bool:
        y = x % modulus if modulus is not None else x
        return any(a <= y < b for a, b in spans)

    return member


def integer_multiples_of(step: RationalLike) -> Membership:
    """Membership in step * Z."""
    step = Fraction(step)
    if step == 0:
        raise ValueError("step must be nonzero")
    return lambda x: (Fraction(x) / step).denominator == 1


def finite_set(values: Iterable[RationalLike]) -> Membership:
    """Membership in an explicit finite set of rationals."""
    pool = frozenset(Fraction(v) for v in values)
    return pool.__contains__


def _parse_interval(token: str) -> tuple:
    if not (token.startswith("[") and token.endswith(")")):
        raise ValueError(f"interval must look like [a,b), got {token!r}")
    a_text, sep, b_text = token[1:-1].partition(",")
    if not sep:
        raise ValueError(f"interval must look like [a,b), got {token!r}")
    return parse_rational(a_text), parse_rational(b_text)


def parse_predicate(text: str) -> Membership:
    """Parse the predicate mini-language used by the command line.

        U [a,b) [c,d) ... [period P]    union of half-open intervals,
                                        optionally repeated with period P
        int-multiple-of a/b             integer multiples of a rational
        set q1 q2 ...                   explicit finite set, inline
        file PATH                       explicit finite set, one rational
                                        per whitespace-separated token
        all | none                      constant predicates
    """
    tokens = text.split()
    if not tokens:
        raise ValueError("empty predicate")
    head, rest = tokens[0], tokens[1:]
    if head == "all" and not rest:
        return lambda x: True
    if head == "none" and not rest:
        return lambda x: False
    if head == "U":
        period = None
        if len(rest) >= 2 and rest[-2] == "period":
            period = parse_rational(rest[-1])
            rest = rest[:-2]
        if not rest:
            raise ValueError("interval union needs at least one interval")
        return interval_union([_parse_interval(tok) for tok in rest], period)
    if head == "int-multiple-of":
        if len(rest) != 1:
            raise ValueError("usage: int-multiple-of a/b")
        return integer_multiples_of(parse_rational(rest[0]))
    if head == "set":
        if not rest:
            raise ValueError("explicit set needs at least one value")
        return finite_set(parse_rational(tok) for tok in rest)
    if head == "file":
        if len(rest) != 1:
            raise ValueError("usage: file PATH")
        try:
            content = Path(rest[0]).read_text()
        except OSError as exc:
            raise ValueError(f"cannot read set file: {exc}") from None
        return finite_set(parse_rational(tok) for tok in content.split())
    raise ValueError(f"unknown predicate form {text!r}")
