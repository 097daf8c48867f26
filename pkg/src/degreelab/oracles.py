"""Slow exhaustive oracles used to cross-check the fast paths.

Nothing here calls the Erdős–Gallai test or the containment search engine,
so agreement with them is meaningful.
"""

from __future__ import annotations

from itertools import combinations, permutations
from typing import Iterator, Sequence

from .graph import SimpleGraph, contains_subgraph

__all__ = [
    "all_graphs",
    "degree_multisets",
    "realizable_by_search",
    "realizations_by_search",
    "potentially_by_enumeration",
    "embeds_by_permutation",
    "independence_by_subsets",
    "nonincreasing_sequences",
]


def all_graphs(n: int) -> Iterator[SimpleGraph]:
    """Every labeled simple graph on n vertices."""
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        rows = [0] * n
        for b, (u, v) in enumerate(pairs):
            if mask >> b & 1:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
        yield SimpleGraph(n, tuple(rows))


def degree_multisets(n: int) -> set[tuple[int, ...]]:
    """Sorted (non-increasing) degree tuples of all labeled graphs on n vertices."""
    return {tuple(sorted(g.degrees(), reverse=True)) for g in all_graphs(n)}


def nonincreasing_sequences(n: int) -> Iterator[tuple[int, ...]]:
    """All non-increasing n-tuples over 0..n-1."""

    def rec(k: int, cap: int) -> Iterator[tuple[int, ...]]:
        if k == 0:
            yield ()
            return
        for first in range(cap, -1, -1):
            for rest in rec(k - 1, first):
                yield (first,) + rest

    yield from rec(n, n - 1)


def realizations_by_search(terms: Sequence[int]) -> Iterator[SimpleGraph]:
    """Labeled graphs with deg(i) == terms[i], by plain capacity-only backtracking."""
    n = len(terms)
    r = list(terms)
    rows = [0] * n

    def rec(i: int) -> Iterator[SimpleGraph]:
        if i == n:
            yield SimpleGraph(n, tuple(rows))
            return
        if r[i] == 0:
            yield from rec(i + 1)
            return
        cands = [j for j in range(i + 1, n) if r[j] > 0]
        for chosen in combinations(cands, r[i]):
            saved = r[i]
            r[i] = 0
            for j in chosen:
                r[j] -= 1
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            yield from rec(i + 1)
            for j in chosen:
                r[j] += 1
                rows[i] &= ~(1 << j)
                rows[j] &= ~(1 << i)
            r[i] = saved

    if sum(terms) % 2 == 0:
        yield from rec(0)


def realizable_by_search(terms: Sequence[int]) -> bool:
    return next(realizations_by_search(terms), None) is not None


def potentially_by_enumeration(terms: Sequence[int], pattern: SimpleGraph) -> bool:
    """Does any labeled realization contain the pattern?"""
    return any(contains_subgraph(g, pattern) is not None for g in realizations_by_search(terms))


def embeds_by_permutation(g: SimpleGraph, h: SimpleGraph) -> bool:
    """Containment by trying every injective vertex map."""
    edges = h.edges()
    for image in permutations(range(g.n), h.n):
        if all(g.has_edge(image[u], image[v]) for u, v in edges):
            return True
    return False


def independence_by_subsets(g: SimpleGraph) -> int:
    best = 0
    for mask in range(1 << g.n):
        size = mask.bit_count()
        if size <= best:
            continue
        if all(not (g.rows[v] & mask) for v in range(g.n) if mask >> v & 1):
            best = size
    return best
