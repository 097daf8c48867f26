"""Degree sequences: parsing, formatting, graphicality and enumeration."""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import groupby
from typing import Iterable, Iterator

__all__ = [
    "DegreeSequence",
    "SequenceParseError",
    "parse_sequence",
    "format_sequence",
    "is_graphical",
    "erdos_gallai_violation",
    "enumerate_graphical_sequences",
]


class SequenceParseError(ValueError):
    """Raised when sequence text cannot be turned into a DegreeSequence."""


@dataclass(frozen=True, order=False)
class DegreeSequence:
    """Non-increasing tuple of vertex degrees.

    Input in any order is sorted on construction. Every term must lie in
    ``0..n-1`` where ``n`` is the number of terms.
    """

    terms: tuple[int, ...]

    def __post_init__(self) -> None:
        terms = tuple(sorted((int(t) for t in self.terms), reverse=True))
        n = len(terms)
        if n < 1:
            raise ValueError("a degree sequence needs at least one term")
        if terms[-1] < 0:
            raise ValueError(f"negative degree {terms[-1]}")
        if terms[0] > n - 1:
            raise ValueError(f"degree {terms[0]} is impossible with only {n} vertices")
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "_sum", sum(terms))

    @property
    def sum(self) -> int:
        return self._sum  # type: ignore[attr-defined]

    @property
    def n(self) -> int:
        return len(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[int]:
        return iter(self.terms)

    def __getitem__(self, i):
        return self.terms[i]

    def __str__(self) -> str:
        return format_sequence(self)

    def __repr__(self) -> str:
        return f"DegreeSequence({format_sequence(self)!r})"

    def counts(self) -> list[tuple[int, int]]:
        """(value, multiplicity) pairs with strictly decreasing values."""
        return [(v, len(list(g))) for v, g in groupby(self.terms)]


_TOKEN = re.compile(r"^(\d+)(?:\^(\d+))?$")


def parse_sequence(text: str) -> DegreeSequence:
    """Parse ``"5,3,3,3,3,3"`` or the exponent form ``"5^1,3^5"``.

    Parentheses and whitespace are ignored, so ``"(5^1, 3^5)"`` is accepted too.
    """
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    if not body.strip():
        raise SequenceParseError("empty sequence")
    terms: list[int] = []
    for raw in body.split(","):
        tok = raw.strip()
        if tok.startswith("-"):
            raise SequenceParseError(f"negative degree in token {tok!r}")
        match = _TOKEN.match(tok)
        if match is None:
            raise SequenceParseError(f"malformed token {raw!r} in {text!r}")
        value = int(match.group(1))
        count = 1 if match.group(2) is None else int(match.group(2))
        if count < 1:
            raise SequenceParseError(f"multiplicity must be positive in {tok!r}")
        terms.extend([value] * count)
    n = len(terms)
    too_big = [t for t in terms if t >= n]
    if too_big:
        raise SequenceParseError(
            f"degree {max(too_big)} is not possible in a {n}-term sequence "
            f"(every degree must be at most n-1 = {n - 1})"
        )
    return DegreeSequence(tuple(terms))


def format_sequence(seq: DegreeSequence | Iterable[int]) -> str:
    """Exponent form when some value repeats, plain comma form otherwise."""
    if not isinstance(seq, DegreeSequence):
        seq = DegreeSequence(tuple(seq))
    counts = seq.counts()
    if any(c > 1 for _, c in counts):
        return ",".join(f"{v}^{c}" for v, c in counts)
    return ",".join(str(t) for t in seq.terms)


def erdos_gallai_violation(terms: Iterable[int]) -> int | None:
    """Smallest k (1-based) whose Erdős–Gallai inequality fails, else None.

    ``terms`` must already be sorted non-increasing. Parity is not checked here.
    """
    d = list(terms)
    n = len(d)
    lhs = 0
    for k in range(1, n + 1):
        lhs += d[k - 1]
        rhs = k * (k - 1)
        for j in range(k, n):
            rhs += d[j] if d[j] < k else k
        if lhs > rhs:
            return k
    return None


def _graphical_sorted(d: list[int] | tuple[int, ...]) -> bool:
    """Erdős–Gallai test on a non-increasing list of non-negative ints."""
    total = 0
    for t in d:
        total += t
    if total & 1:
        return False
    n = len(d)
    if n and d[0] > n - 1:
        return False
    lhs = 0
    for k in range(1, n + 1):
        dk = d[k - 1]
        if dk == 0:
            break
        lhs += dk
        # only the last index of a run of equal values needs checking
        if k < n and d[k] == dk:
            continue
        rhs = k * (k - 1)
        for j in range(k, n):
            dj = d[j]
            rhs += dj if dj < k else k
        if lhs > rhs:
            return False
    return True


def is_graphical(seq: DegreeSequence | Iterable[int]) -> bool:
    """True iff some simple graph has exactly this degree multiset."""
    if isinstance(seq, DegreeSequence):
        return _graphical_sorted(seq.terms)
    d = sorted(seq, reverse=True)
    if d and d[-1] < 0:
        return False
    return _graphical_sorted(d)


def _sequences_with_sum(n: int, total: int, cap: int) -> Iterator[tuple[int, ...]]:
    """Non-increasing n-tuples over 0..cap summing to total, lex descending."""
    if n == 0:
        if total == 0:
            yield ()
        return
    lo = -(-total // n)  # first term is at least the average
    for first in range(min(cap, total), lo - 1, -1):
        for rest in _sequences_with_sum(n - 1, total - first, first):
            yield (first,) + rest


def enumerate_graphical_sequences(n: int, min_sum: int, max_sum: int) -> Iterator[DegreeSequence]:
    """Every graphical length-n sequence with sum in [min_sum, max_sum].

    Order: descending sum, then lexicographically descending.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if not 0 <= min_sum <= max_sum:
        raise ValueError("need 0 <= min_sum <= max_sum")
    top = min(max_sum, n * (n - 1))
    if top & 1:
        top -= 1
    for level in range(top, min_sum - 1, -2):
        for terms in _sequences_with_sum(n, level, n - 1):
            if _graphical_sorted(terms):
                yield DegreeSequence(terms)
