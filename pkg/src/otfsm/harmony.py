"""Harmony arithmetic.

Two representations live here:

* mark vectors: fixed-degree tuples of non-positive ints, one coordinate per
  binary constraint in decreasing dominance, compared lexicographically and
  accumulated by componentwise addition;
* mark lists: variable-length sequences over a totally ordered mark alphabet,
  compared by sorting worst-first, padding with the zero mark and comparing
  position-wise.  Used by the brute-force oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import DegreeError, DomainError

MarkVector = tuple[int, ...]

LESS, EQUAL, GREATER = -1, 0, 1

ZERO_MARK = "∅"


@dataclass
class ComparisonCounter:
    """Counts harmony comparisons; pass one to ``mv_compare`` to meter an algorithm."""

    count: int = 0


def zero_vector(degree: int) -> MarkVector:
    return (0,) * degree


def _check_degree(a: Sequence[int], b: Sequence[int]) -> None:
    if len(a) != len(b):
        raise DegreeError(f"mark vectors differ in degree: {len(a)} vs {len(b)}")


def mv_compare(a: MarkVector, b: MarkVector, counter: ComparisonCounter | None = None) -> int:
    """Return GREATER if ``a`` is more harmonic than ``b``, LESS if less, EQUAL otherwise.

    The first coordinate is the most significant.
    """
    _check_degree(a, b)
    if counter is not None:
        counter.count += 1
    for x, y in zip(a, b):
        if x != y:
            return GREATER if x > y else LESS
    return EQUAL


def mv_add(a: MarkVector, b: MarkVector) -> MarkVector:
    _check_degree(a, b)
    return tuple(x + y for x, y in zip(a, b))


def mv_concat(a: MarkVector, b: MarkVector) -> MarkVector:
    return tuple(a) + tuple(b)


def mv_sum(vectors: Iterable[MarkVector], degree: int) -> MarkVector:
    total = zero_vector(degree)
    for v in vectors:
        total = mv_add(total, v)
    return total


def mv_max(vectors: Iterable[MarkVector]) -> MarkVector | None:
    best = None
    for v in vectors:
        if best is None or mv_compare(v, best) == GREATER:
            best = v
    return best


# -- mark lists -------------------------------------------------------------


@dataclass(frozen=True)
class MarkAlphabet:
    """Marks listed from most to least harmonic; the first one is the zero mark."""

    marks: tuple[str, ...]
    _rank: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if len(self.marks) < 1:
            raise ValueError("a mark alphabet needs at least the zero mark")
        if len(set(self.marks)) != len(self.marks):
            raise ValueError(f"duplicate marks in {self.marks!r}")
        object.__setattr__(self, "_rank", {m: i for i, m in enumerate(self.marks)})

    @classmethod
    def of(cls, *marks: str) -> MarkAlphabet:
        return cls(tuple(marks))

    @property
    def zero(self) -> str:
        return self.marks[0]

    def rank(self, mark: str) -> int:
        """0 for the zero mark; larger means less harmonic."""
        try:
            return self._rank[mark]
        except KeyError:
            raise DomainError(f"mark {mark!r} is not in alphabet {self.marks!r}") from None


# Binary alphabet used for constraint marks: zero mark and the violation mark.
BINARY = MarkAlphabet((ZERO_MARK, "ε"))


@dataclass(frozen=True)
class MarkList:
    items: tuple[str, ...]
    alphabet: MarkAlphabet

    def __post_init__(self):
        for m in self.items:
            self.alphabet.rank(m)

    @classmethod
    def parse(cls, text: str, alphabet: MarkAlphabet) -> MarkList:
        """Whitespace-separated tokens, or one character per mark if there is no whitespace."""
        tokens = text.split() if any(ch.isspace() for ch in text.strip()) else list(text.strip())
        return cls(tuple(tokens), alphabet)

    def sorted(self) -> tuple[str, ...]:
        """Worst mark first."""
        return tuple(sorted(self.items, key=self.alphabet.rank, reverse=True))

    def violations(self) -> int:
        return sum(1 for m in self.items if m != self.alphabet.zero)

    def __str__(self) -> str:
        sep = "" if all(len(m) == 1 for m in self.alphabet.marks) else " "
        return sep.join(self.items)


def list_compare(a: MarkList, b: MarkList) -> int:
    if a.alphabet != b.alphabet:
        raise DomainError("mark lists over different alphabets cannot be compared")
    alphabet = a.alphabet
    sa, sb = a.sorted(), b.sorted()
    n = max(len(sa), len(sb))
    sa = sa + (alphabet.zero,) * (n - len(sa))
    sb = sb + (alphabet.zero,) * (n - len(sb))
    for x, y in zip(sa, sb):
        rx, ry = alphabet.rank(x), alphabet.rank(y)
        if rx != ry:
            return GREATER if rx < ry else LESS
    return EQUAL


def filter_marks(marks: MarkList, keep: str) -> MarkList:
    """Replace every mark other than ``keep`` by the zero mark and re-sort."""
    alphabet = marks.alphabet
    if alphabet.rank(keep) == 0:
        raise DomainError("cannot filter on the zero mark")
    kept = tuple(m if m == keep else alphabet.zero for m in marks.items)
    return MarkList(MarkList(kept, alphabet).sorted(), alphabet)


def decompose(marks: MarkList) -> tuple[MarkList, ...]:
    """Split a many-valued mark list into binary lists, dominant (worst mark) first."""
    alphabet = marks.alphabet
    if len(alphabet.marks) < 2:
        raise DomainError("decomposition needs at least one non-zero mark")
    return tuple(filter_marks(marks, m) for m in reversed(alphabet.marks[1:]))


def lexicographic(orderings: Iterable[int]) -> int:
    """Combine component orderings, the first non-equal one deciding."""
    for o in orderings:
        if o != EQUAL:
            return o
    return EQUAL


def decomposed_compare(a: MarkList, b: MarkList) -> int:
    return lexicographic(list_compare(x, y) for x, y in zip(decompose(a), decompose(b)))
