"""Exact algebra of turn words in the two unipotent 2x2 generators.

A closed curve on a glued-triangle surface turns left or right at every
vertex of the dual cubic graph it traverses.  Recording the turns gives a
word over {L, R}; mapping L to [[1,1],[0,1]] and R to [[1,0],[1,1]] and
multiplying yields an integer matrix whose trace determines the hyperbolic
geodesic length of the curve, 2*acosh(trace/2).

Words are identified up to cyclic rotation and up to reversal with L and R
exchanged (traversing the curve backwards).  This module computes matrices
and traces exactly, canonicalizes equivalence classes, and enumerates all
classes up to a given trace together with their Poisson means.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Tuple

Matrix = Tuple[int, int, int, int]  # row-major ((a, b), (c, d)) flattened

_ALPHABET = frozenset("LR")


@dataclass(frozen=True)
class Word:
    """A nonempty finite word over the alphabet {L, R}."""

    letters: str

    def __post_init__(self):
        if not self.letters:
            raise ValueError("a word must have at least one letter")
        if not set(self.letters) <= _ALPHABET:
            raise ValueError(f"invalid letters in {self.letters!r}: only L and R allowed")

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return self.letters

    @property
    def is_mixed(self) -> bool:
        """True when both letters occur (trace then exceeds 2)."""
        return "L" in self.letters and "R" in self.letters


@dataclass(frozen=True)
class WordClass:
    """An equivalence class of words under rotation and reverse-swap.

    ``canonical`` is the lexicographically smallest member (L < R),
    ``size`` the number of distinct words in the orbit, and
    ``poisson_mean`` the limiting Poisson mean size/(2*length) of the
    count of circuits carrying this class on a large random graph.
    """

    canonical: Word
    size: int
    length: int
    trace: int
    poisson_mean: Fraction

    def __str__(self) -> str:
        return f"[{self.canonical}]"


def word_matrix(w: Word | str) -> Matrix:
    """Ordered product of the generator matrices for ``w``.

    Exact in arbitrary precision; entries are nonnegative and the
    determinant is 1.

    >>> word_matrix("LR")
    (2, 1, 1, 1)
    """
    letters = w.letters if isinstance(w, Word) else Word(w).letters
    a, b, c, d = 1, 0, 0, 1
    for ch in letters:
        if ch == "L":
            # right-multiply by [[1,1],[0,1]]
            a, b, c, d = a, a + b, c, c + d
        else:
            # right-multiply by [[1,0],[1,1]]
            a, b, c, d = a + b, b, c + d, d
    return a, b, c, d


def word_trace(w: Word | str) -> int:
    """Trace of ``word_matrix(w)``.

    >>> word_trace("LR")
    3
    >>> word_trace("LLLLL")
    2
    """
    m = word_matrix(w)
    return m[0] + m[3]


def reverse_swap(w: Word | str) -> Word:
    """Read backwards and exchange L with R (reverse traversal direction).

    Equals the matrix transpose, so the trace is preserved.
    """
    letters = w.letters if isinstance(w, Word) else w
    return Word(letters[::-1].translate(str.maketrans("LR", "RL")))


def _orbit(letters: str) -> List[str]:
    seen = set()
    swapped = letters[::-1].translate(str.maketrans("LR", "RL"))
    for variant in (letters, swapped):
        for i in range(len(variant)):
            seen.add(variant[i:] + variant[:i])
    return sorted(seen)


def canonicalize(w: Word | str) -> WordClass:
    """Equivalence class of ``w``: canonical member, orbit size, Poisson mean.

    The orbit is every cyclic rotation of ``w`` together with every cyclic
    rotation of its reverse-swap; duplicates collapse, so ``size`` is at
    most twice the length.

    >>> canonicalize("RL").canonical.letters
    'LR'
    >>> canonicalize("LLR").size
    6
    """
    letters = w.letters if isinstance(w, Word) else Word(w).letters
    orbit = _orbit(letters)
    k = len(letters)
    return WordClass(
        canonical=Word(orbit[0]),
        size=len(orbit),
        length=k,
        trace=word_trace(orbit[0]),
        poisson_mean=Fraction(len(orbit), 2 * k),
    )


def min_trace_for_length(j: int) -> int:
    """Least trace over mixed words of length ``j``; attained by L^(j-1)R.

    Inserting a letter into a word with positive entries strictly
    increases the trace, so the bound supports pruning cycle searches by
    length.
    """
    if j < 2:
        raise ValueError("mixed words need length >= 2")
    return j + 1


@dataclass
class TraceClassTable:
    """All word classes with trace in [3, max_trace], grouped by trace."""

    max_trace: int
    classes: Dict[int, List[WordClass]] = field(default_factory=dict)
    lambda_sum: Dict[int, Fraction] = field(default_factory=dict)

    def all_classes(self) -> Iterator[WordClass]:
        for k in sorted(self.classes):
            yield from self.classes[k]

    def to_csv(self) -> str:
        """Serialize as CSV: trace, canonical word, class size, length, lambda."""
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["trace", "canonical", "size", "length",
                         "lambda_fraction", "lambda_decimal"])
        for cls in self.all_classes():
            lam = cls.poisson_mean
            writer.writerow([cls.trace, cls.canonical.letters, cls.size,
                             cls.length, f"{lam.numerator}/{lam.denominator}",
                             f"{float(lam):.12g}"])
        return buf.getvalue()


def _scan_words_with_trace_bound(max_trace: int, max_len: int) -> Iterator[str]:
    """Yield every mixed word of length <= max_len whose trace is <= max_trace.

    Depth-first over prefixes.  Right-multiplying by a generator never
    decreases any matrix entry, hence never the trace, so a prefix whose
    trace already exceeds the bound cannot recover and is pruned.  All-L
    (or all-R) prefixes keep trace 2 and are never pruned, which is why
    the explicit depth cap is required.
    """
    # stack entries: (letters, matrix)
    stack: List[Tuple[str, Matrix]] = [("L", (1, 1, 0, 1)), ("R", (1, 0, 1, 1))]
    while stack:
        letters, (a, b, c, d) = stack.pop()
        if "L" in letters and "R" in letters and a + d <= max_trace:
            yield letters
        if len(letters) >= max_len:
            continue
        for ch, m in (("L", (a, a + b, c, c + d)), ("R", (a + b, b, c + d, d))):
            if m[0] + m[3] <= max_trace:
                stack.append((letters + ch, m))


def enumerate_trace_classes(max_trace: int, scan_margin: int = 0) -> TraceClassTable:
    """Every word class with trace in [3, max_trace].

    A mixed word of length j has trace at least j+1, so scanning lengths
    up to max_trace-1 is exhaustive; ``scan_margin`` extends the scanned
    length (useful only to double-check completeness).
    """
    if max_trace < 3:
        raise ValueError("max_trace must be at least 3")
    by_canonical: Dict[str, WordClass] = {}
    for letters in _scan_words_with_trace_bound(max_trace, max_trace - 1 + scan_margin):
        t = word_trace(letters)
        if t < 3:
            continue
        cls = canonicalize(letters)
        by_canonical.setdefault(cls.canonical.letters, cls)

    table = TraceClassTable(max_trace=max_trace)
    for k in range(3, max_trace + 1):
        members = [c for c in by_canonical.values() if c.trace == k]
        members.sort(key=lambda c: (c.length, c.canonical.letters))
        table.classes[k] = members
        table.lambda_sum[k] = sum((c.poisson_mean for c in members), Fraction(0))
    return table
