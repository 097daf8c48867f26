"""Realizations of graphical sequences.

Vertex ``i`` of every realization produced here has degree ``S[i]``, i.e.
realizations are labeled by position in the non-increasing sequence.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

from .graph import SimpleGraph, TargetSpec, automorphisms
from .sequence import DegreeSequence, _graphical_sorted, is_graphical

__all__ = [
    "DEFAULT_ORACLE_LIMIT",
    "NotGraphicalError",
    "OracleLimitExceeded",
    "InvalidSwap",
    "BudgetExceeded",
    "SwapMove",
    "SearchStats",
    "havel_hakimi_realization",
    "apply_swap",
    "iter_swap_moves",
    "enumerate_realizations_backtrack",
    "enumerate_realizations_swapbfs",
    "find_realization_containing",
    "search_containing",
]

DEFAULT_ORACLE_LIMIT = 8


class NotGraphicalError(ValueError):
    pass


class OracleLimitExceeded(ValueError):
    """The instance is larger than the configured exhaustive-enumeration limit."""


class InvalidSwap(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    """A node budget ran out before the search finished."""


def _require_graphical(seq: DegreeSequence) -> None:
    if not is_graphical(seq):
        raise NotGraphicalError(f"{seq} is not graphical")


def havel_hakimi_realization(seq: DegreeSequence) -> SimpleGraph:
    """Deterministic Havel–Hakimi laydown.

    Repeatedly takes the vertex of largest remaining demand (lowest index on
    ties) and joins it to the largest remaining demands among the others.
    """
    _require_graphical(seq)
    n = seq.n
    return SimpleGraph(n, tuple(_havel_hakimi_rows(list(seq.terms), list(range(n)), n)))


def _havel_hakimi_rows(demand: list[int], vertices: list[int], n: int) -> list[int]:
    """Lay down ``demand[i]`` edges at ``vertices[i]``; raises if impossible."""
    rows = [0] * n
    r = list(demand)
    idx = list(range(len(vertices)))
    while idx:
        idx.sort(key=lambda i: (-r[i], i))
        head = idx[0]
        need = r[head]
        if need == 0:
            return rows
        others = idx[1 : need + 1]
        if len(others) < need or r[others[-1]] == 0:
            raise NotGraphicalError("residual demand cannot be laid down")
        r[head] = 0
        u = vertices[head]
        for i in others:
            r[i] -= 1
            v = vertices[i]
            rows[u] |= 1 << v
            rows[v] |= 1 << u
    return rows


@dataclass(frozen=True)
class SwapMove:
    """Remove edges a-b and c-d, add a-c and b-d. All four vertices distinct."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        if len({self.a, self.b, self.c, self.d}) != 4:
            raise InvalidSwap(f"swap needs four distinct vertices, got {self.a, self.b, self.c, self.d}")

    @property
    def removed(self) -> frozenset[frozenset[int]]:
        return frozenset({frozenset((self.a, self.b)), frozenset((self.c, self.d))})

    @property
    def added(self) -> frozenset[frozenset[int]]:
        return frozenset({frozenset((self.a, self.c)), frozenset((self.b, self.d))})

    def inverse(self) -> "SwapMove":
        return SwapMove(self.a, self.c, self.b, self.d)


def apply_swap(g: SimpleGraph, move: SwapMove) -> SimpleGraph:
    for u, v in ((move.a, move.b), (move.c, move.d)):
        if not g.has_edge(u, v):
            raise InvalidSwap(f"edge {u}-{v} is not in the graph")
    for u, v in ((move.a, move.c), (move.b, move.d)):
        if g.has_edge(u, v):
            raise InvalidSwap(f"edge {u}-{v} is already in the graph")
    rows = list(g.rows)
    _toggle(rows, move.a, move.b)
    _toggle(rows, move.c, move.d)
    _toggle(rows, move.a, move.c)
    _toggle(rows, move.b, move.d)
    return SimpleGraph(g.n, tuple(rows))


def _toggle(rows: list[int], u: int, v: int) -> None:
    rows[u] ^= 1 << v
    rows[v] ^= 1 << u


def _edges_of(rows: tuple[int, ...]) -> list[tuple[int, int]]:
    out = []
    for u, r in enumerate(rows):
        w = r >> (u + 1)
        v = u + 1
        while w:
            if w & 1:
                out.append((u, v))
            w >>= 1
            v += 1
    return out


def _swap_neighbours(rows: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    edges = _edges_of(rows)
    for (a, b), (c, d) in combinations(edges, 2):
        if a == c or a == d or b == c or b == d:
            continue
        # two ways to rewire a pair of disjoint edges
        for x, y in ((c, d), (d, c)):
            if rows[a] >> x & 1 or rows[b] >> y & 1:
                continue
            new = list(rows)
            new[a] ^= (1 << b) | (1 << x)
            new[b] ^= (1 << a) | (1 << y)
            new[x] ^= (1 << y) | (1 << a)
            new[y] ^= (1 << x) | (1 << b)
            yield tuple(new)


def iter_swap_moves(g: SimpleGraph) -> Iterator[SwapMove]:
    """Every valid two-edge swap of g."""
    for (a, b), (c, d) in combinations(g.edges(), 2):
        if len({a, b, c, d}) < 4:
            continue
        for x, y in ((c, d), (d, c)):
            if not g.has_edge(a, x) and not g.has_edge(b, y):
                yield SwapMove(a, b, x, y)


def enumerate_realizations_backtrack(
    seq: DegreeSequence, oracle_limit: int = DEFAULT_ORACLE_LIMIT
) -> Iterator[SimpleGraph]:
    """Every labeled realization of seq, each once.

    Vertices are processed in position order; each one picks its remaining
    neighbours among later vertices. A choice is kept only if the demands left
    on the later vertices are still graphical, so no branch dead-ends.
    """
    _require_graphical(seq)
    n = seq.n
    if n > oracle_limit:
        raise OracleLimitExceeded(f"n={n} exceeds the enumeration limit {oracle_limit}")
    r = list(seq.terms)
    rows = [0] * n

    def rec(i: int) -> Iterator[SimpleGraph]:
        if i == n:
            yield SimpleGraph(n, tuple(rows))
            return
        need = r[i]
        cands = [j for j in range(i + 1, n) if r[j] > 0]
        for chosen in combinations(cands, need):
            for j in chosen:
                r[j] -= 1
            if _graphical_sorted(sorted(r[i + 1 :], reverse=True)):
                mask = 0
                for j in chosen:
                    mask |= 1 << j
                    rows[j] |= 1 << i
                rows[i] |= mask
                saved = r[i]
                r[i] = 0
                yield from rec(i + 1)
                r[i] = saved
                rows[i] &= ~mask
                for j in chosen:
                    rows[j] &= ~(1 << i)
            for j in chosen:
                r[j] += 1

    yield from rec(0)


def enumerate_realizations_swapbfs(seq: DegreeSequence) -> Iterator[SimpleGraph]:
    """Breadth-first closure of the Havel–Hakimi realization under two-edge swaps."""
    start = havel_hakimi_realization(seq)
    n = seq.n
    seen = {start.rows}
    queue = deque([start.rows])
    while queue:
        rows = queue.popleft()
        yield SimpleGraph(n, rows)
        for nxt in _swap_neighbours(rows):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)


@dataclass
class SearchStats:
    """Counters from a containment search."""

    subsets_considered: int = 0
    subsets_pruned: int = 0
    placements_tried: int = 0
    nodes: int = 0
    found_in: str | None = None  # "highest" or "fallback"
    exhausted: bool = False

    def to_json(self) -> dict:
        return {
            "subsets_considered": self.subsets_considered,
            "subsets_pruned": self.subsets_pruned,
            "placements_tried": self.placements_tried,
            "nodes": self.nodes,
            "found_in": self.found_in,
            "exhausted": self.exhausted,
        }


def _class_layout(terms: tuple[int, ...]) -> list[tuple[int, int, int]]:
    """(value, first position, count) for each run of equal terms."""
    out: list[tuple[int, int, int]] = []
    for i, t in enumerate(terms):
        if out and out[-1][0] == t:
            v, s, c = out[-1]
            out[-1] = (v, s, c + 1)
        else:
            out.append((t, i, 1))
    return out


def _count_vectors(caps: list[int], total: int) -> Iterator[tuple[int, ...]]:
    """Vectors x with 0 <= x_j <= caps[j] and sum total, lexicographically descending."""
    if not caps:
        if total == 0:
            yield ()
        return
    rest_cap = sum(caps[1:])
    for x in range(min(caps[0], total), -1, -1):
        if total - x > rest_cap:
            break
        for tail in _count_vectors(caps[1:], total - x):
            yield (x,) + tail


def _multiset_permutations(counts: list[int]) -> Iterator[tuple[int, ...]]:
    """Distinct arrangements of labels j repeated counts[j] times."""
    size = sum(counts)
    cur: list[int] = []

    def rec() -> Iterator[tuple[int, ...]]:
        if len(cur) == size:
            yield tuple(cur)
            return
        for j, c in enumerate(counts):
            if c:
                counts[j] -= 1
                cur.append(j)
                yield from rec()
                cur.pop()
                counts[j] += 1

    yield from rec()


class _Search:
    """Exact search for a realization of ``terms`` containing ``pattern``.

    A placement maps pattern vertices to positions. Positions holding equal
    degrees are interchangeable, and so are placements differing by a pattern
    automorphism, so only one representative of each is tried. Given a
    placement, the pattern edges are fixed and the leftover demand is
    completed: placed vertices choose their remaining neighbours one by one,
    after which the unplaced vertices are unconstrained and finish with a
    plain graphicality test.
    """

    def __init__(self, terms: tuple[int, ...], pattern: SimpleGraph, max_nodes: int | None):
        self.d = terms
        self.n = len(terms)
        self.h = pattern
        self.h_deg = pattern.degrees()
        self.auts = automorphisms(pattern) if pattern.n <= 8 else [tuple(range(pattern.n))]
        self.max_nodes = max_nodes
        self.stats = SearchStats()

    def _tick(self) -> None:
        self.stats.nodes += 1
        if self.max_nodes is not None and self.stats.nodes > self.max_nodes:
            raise BudgetExceeded(f"node budget {self.max_nodes} exhausted")

    def subsets(self) -> Iterator[tuple[list[int], bool]]:
        """(class-count vector, passes the sorted-residual test), best first."""
        layout = _class_layout(self.d)
        demand = sorted(self.h_deg, reverse=True)
        for x in _count_vectors([c for _, _, c in layout], self.h.n):
            supply = [v for (v, _, _), cnt in zip(layout, x) for _ in range(cnt)]
            resid = [s - t for s, t in zip(supply, demand)]
            ok = min(resid) >= 0
            if ok:
                rest = [v for (v, _, c), cnt in zip(layout, x) for _ in range(c - cnt)]
                ok = _graphical_sorted(sorted(resid + rest, reverse=True))
            yield list(x), ok

    def placements(self, x: list[int]) -> list[list[int]]:
        """Position of each pattern vertex, one per symmetry class."""
        layout = _class_layout(self.d)
        used = [j for j, c in enumerate(x) if c]
        counts = [x[j] for j in used]
        h = self.h.n
        reps = []
        for labels in _multiset_permutations(counts):
            key = min(tuple(labels[a[v]] for v in range(h)) for a in self.auts)
            if key != labels:
                continue
            reps.append(labels)
        # the degree-sorted pairing (largest demand to largest supply) goes first
        by_demand = sorted(range(h), key=lambda v: (-self.h_deg[v], v))
        sorted_labels = [0] * h
        slot = 0
        for j, c in enumerate(counts):
            for _ in range(c):
                sorted_labels[by_demand[slot]] = j
                slot += 1
        first = min(tuple(sorted_labels[a[v]] for v in range(h)) for a in self.auts)
        reps.sort(key=lambda lab: lab != first)
        out = []
        for labels in reps:
            nxt = {j: layout[used[j]][1] for j in range(len(used))}
            pos = []
            for lab in labels:
                pos.append(nxt[lab])
                nxt[lab] += 1
            out.append(pos)
        return out

    def run(self, fallback: bool) -> SimpleGraph | None:
        if self.h.n > self.n:
            self.stats.exhausted = True
            return None
        for i, (x, ok) in enumerate(self.subsets()):
            if i > 0 and not fallback:
                return None
            self.stats.subsets_considered += 1
            if not ok:
                self.stats.subsets_pruned += 1
                continue
            for pos in self.placements(x):
                self.stats.placements_tried += 1
                g = self.complete(pos)
                if g is not None:
                    self.stats.found_in = "highest" if i == 0 else "fallback"
                    return g
        self.stats.exhausted = fallback
        return None

    def complete(self, pos: list[int]) -> SimpleGraph | None:
        n = self.n
        r = list(self.d)
        rows = [0] * n
        for u, v in self.h.edges():
            a, b = pos[u], pos[v]
            rows[a] |= 1 << b
            rows[b] |= 1 << a
        for v in range(self.h.n):
            r[pos[v]] -= self.h_deg[v]
            if r[pos[v]] < 0:
                return None
        if not _graphical_sorted(sorted(r, reverse=True)):
            return None
        forbid = list(rows)  # pattern edges may not be used twice
        placed = sorted(pos, key=lambda p: (-r[p], p))
        placed_set = set(placed)
        unplaced = [v for v in range(n) if v not in placed_set]
        failed: set[tuple] = set()
        edges: list[tuple[int, int]] = []

        def rec(idx: int) -> bool:
            if idx == len(placed):
                demand = [r[u] for u in unplaced]
                if not _graphical_sorted(sorted(demand, reverse=True)):
                    return False
                for a, b in edges:
                    rows[a] |= 1 << b
                    rows[b] |= 1 << a
                sub = _havel_hakimi_rows(demand, unplaced, n)
                for v in range(n):
                    rows[v] |= sub[v]
                return True
            key = (idx, tuple(r[q] for q in placed[idx:]), tuple(sorted(r[u] for u in unplaced)))
            if key in failed:
                return False
            p = placed[idx]
            need = r[p]
            later = [q for q in placed[idx + 1 :] if r[q] > 0 and not forbid[p] >> q & 1]
            groups: dict[int, list[int]] = {}
            for u in unplaced:
                if r[u] > 0:
                    groups.setdefault(r[u], []).append(u)
            values = sorted(groups, reverse=True)
            caps = [len(groups[v]) for v in values]
            if need > len(later) + sum(caps):
                failed.add(key)
                return False
            r[p] = 0
            for a in range(min(need, len(later)), -1, -1):
                if need - a > sum(caps):
                    break
                for qs in combinations(later, a):
                    for cvec in _count_vectors(caps, need - a):
                        self._tick()
                        chosen = list(qs)
                        for v, c in zip(values, cvec):
                            chosen.extend(groups[v][:c])
                        for q in chosen:
                            r[q] -= 1
                        rest = [r[q] for q in placed[idx + 1 :]] + [r[u] for u in unplaced]
                        if _graphical_sorted(sorted(rest, reverse=True)):
                            for q in chosen:
                                edges.append((p, q))
                            if rec(idx + 1):
                                return True
                            del edges[len(edges) - len(chosen) :]
                        for q in chosen:
                            r[q] += 1
            r[p] = need
            failed.add(key)
            return False

        if rec(0):
            return SimpleGraph(n, tuple(rows))
        return None


def search_containing(
    seq: DegreeSequence,
    target: TargetSpec | SimpleGraph,
    placement: str = "fallback",
    max_nodes: int | None = None,
) -> tuple[SimpleGraph | None, SearchStats]:
    """Like find_realization_containing but also returns search counters.

    Raises BudgetExceeded when ``max_nodes`` runs out.
    """
    if placement not in ("highest", "fallback"):
        raise ValueError(f"unknown placement strategy {placement!r}")
    _require_graphical(seq)
    pattern = target.graph if isinstance(target, TargetSpec) else target
    search = _Search(seq.terms, pattern, max_nodes)
    g = search.run(fallback=placement == "fallback")
    return g, search.stats


def find_realization_containing(
    seq: DegreeSequence, target: TargetSpec | SimpleGraph, placement: str = "fallback"
) -> SimpleGraph | None:
    """A realization of seq containing the target, or None.

    ``placement="highest"`` only tries the highest-degree positions and may
    miss witnesses; ``"fallback"`` (default) continues through every
    degree-distinct placement, so None is then an exact answer.
    """
    return search_containing(seq, target, placement)[0]
