"""Small labeled simple graphs stored as one adjacency bitmask per vertex.

Path convention used throughout this package: ``P_k`` is the path with k
*edges* on k + 1 vertices. ``build_km_minus_pk(5, 3)`` therefore removes
three edges from K_5, not two.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterable, Iterator, Sequence

from .sequence import DegreeSequence

__all__ = [
    "MAX_ORDER",
    "SimpleGraph",
    "TargetSpec",
    "build_complete",
    "build_empty",
    "build_path",
    "join",
    "build_km_minus_pk",
    "extremal_construction",
    "contains_subgraph",
    "iter_embeddings",
    "automorphisms",
    "independence_number",
    "degree_sequence",
    "is_isomorphic",
    "canonical_form",
    "to_graph6",
    "from_graph6",
    "to_edge_json",
    "from_edge_json",
]

MAX_ORDER = 64


@dataclass(frozen=True)
class SimpleGraph:
    """Immutable simple graph on vertices ``0..n-1``.

    ``rows[v]`` is the neighbor bitmask of ``v``. Equality and hashing are on
    the exact labeled adjacency.
    """

    n: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_ORDER:
            raise ValueError(f"graph order must be in 1..{MAX_ORDER}, got {self.n}")
        if len(self.rows) != self.n:
            raise ValueError("need exactly one adjacency row per vertex")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.rows):
            if row & ~full:
                raise ValueError(f"row {v} references a vertex outside 0..{self.n - 1}")
            if row >> v & 1:
                raise ValueError(f"loop at vertex {v}")
            w = row
            while w:
                low = w & -w
                u = low.bit_length() - 1
                if not self.rows[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {v} and {u}")
                w ^= low

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "SimpleGraph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {u}-{v} outside 0..{n - 1}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @property
    def order(self) -> int:
        return self.n

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> set[int]:
        return {u for u in range(self.n) if self.rows[v] >> u & 1}

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def edges(self) -> list[tuple[int, int]]:
        """Edges as (u, v) with u < v, sorted lexicographically."""
        return [(u, v) for u in range(self.n) for v in range(u + 1, self.n) if self.rows[u] >> v & 1]

    def edge_count(self) -> int:
        return sum(self.degrees()) // 2

    def complement(self) -> "SimpleGraph":
        full = (1 << self.n) - 1
        return SimpleGraph(self.n, tuple(full & ~r & ~(1 << v) for v, r in enumerate(self.rows)))

    def relabel(self, perm: Sequence[int]) -> "SimpleGraph":
        """Graph whose vertex ``perm[v]`` plays the role of old vertex ``v``."""
        return SimpleGraph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges()))

    def induced(self, vertices: Sequence[int]) -> "SimpleGraph":
        index = {v: i for i, v in enumerate(vertices)}
        return SimpleGraph.from_edges(
            len(vertices),
            ((index[u], index[v]) for u, v in self.edges() if u in index and v in index),
        )

    def __repr__(self) -> str:
        return f"SimpleGraph(n={self.n}, edges={self.edges()})"


def build_complete(m: int) -> SimpleGraph:
    if not 1 <= m <= MAX_ORDER:
        raise ValueError(f"order must be in 1..{MAX_ORDER}, got {m}")
    full = (1 << m) - 1
    return SimpleGraph(m, tuple(full & ~(1 << v) for v in range(m)))


def build_empty(t: int) -> SimpleGraph:
    """The edgeless graph on t vertices (the complement of K_t)."""
    if not 1 <= t <= MAX_ORDER:
        raise ValueError(f"order must be in 1..{MAX_ORDER}, got {t}")
    return SimpleGraph(t, (0,) * t)


def build_path(edges: int) -> SimpleGraph:
    """The path with ``edges`` edges, on ``edges + 1`` vertices."""
    return SimpleGraph.from_edges(edges + 1, ((i, i + 1) for i in range(edges)))


def join(g: SimpleGraph, h: SimpleGraph) -> SimpleGraph:
    """Disjoint union of g and h plus every edge between them; g comes first."""
    n = g.n + h.n
    if n > MAX_ORDER:
        raise ValueError(f"join would have {n} vertices, limit is {MAX_ORDER}")
    g_mask = (1 << g.n) - 1
    h_mask = ((1 << h.n) - 1) << g.n
    rows = [r | h_mask for r in g.rows] + [(r << g.n) | g_mask for r in h.rows]
    return SimpleGraph(n, tuple(rows))


def build_km_minus_pk(m: int, k: int) -> SimpleGraph:
    """K_m with the k path edges 0-1, 1-2, ..., (k-1)-k removed.

    ``k`` counts removed *edges*; the removed path spans k + 1 vertices.
    """
    if k < 1 or m < k + 1:
        raise ValueError(f"K_m - P_k needs k >= 1 and m >= k + 1 (got m={m}, k={k})")
    base = build_complete(m)
    rows = list(base.rows)
    for i in range(k):
        rows[i] &= ~(1 << (i + 1))
        rows[i + 1] &= ~(1 << i)
    return SimpleGraph(m, tuple(rows))


def extremal_construction(m: int, n: int) -> SimpleGraph:
    """K_{m-3} joined with n-m+3 isolated vertices; clique vertices first."""
    if not n >= m >= 4:
        raise ValueError(f"need n >= m >= 4 (got m={m}, n={n})")
    return join(build_complete(m - 3), build_empty(n - m + 3))


def degree_sequence(g: SimpleGraph) -> DegreeSequence:
    return DegreeSequence(tuple(g.degrees()))


@dataclass(frozen=True)
class TargetSpec:
    """The pattern a realization must contain.

    Either the family member K_m - P_k (``m``, ``k`` set; k counts removed
    path edges) or an explicit ``pattern`` graph.
    """

    m: int | None = None
    k: int | None = None
    pattern: SimpleGraph | None = None

    def __post_init__(self) -> None:
        if self.pattern is None:
            if self.m is None or self.k is None:
                raise ValueError("TargetSpec needs (m, k) or an explicit pattern")
            if self.k < 1 or self.m < self.k + 1:
                raise ValueError(f"K_m - P_k needs k >= 1 and m >= k + 1 (got m={self.m}, k={self.k})")
            if self.m > MAX_ORDER:
                raise ValueError(f"m must be at most {MAX_ORDER}")
        elif self.m is not None or self.k is not None:
            raise ValueError("give either (m, k) or a pattern, not both")

    @classmethod
    def family(cls, m: int, k: int) -> "TargetSpec":
        return cls(m=m, k=k)

    @classmethod
    def from_graph(cls, g: SimpleGraph) -> "TargetSpec":
        return cls(pattern=g)

    @property
    def is_family(self) -> bool:
        return self.pattern is None

    @property
    def graph(self) -> SimpleGraph:
        if self.pattern is not None:
            return self.pattern
        return build_km_minus_pk(self.m, self.k)

    @property
    def order(self) -> int:
        return self.m if self.pattern is None else self.pattern.n

    def to_json(self) -> dict:
        if self.pattern is None:
            return {"m": self.m, "k": self.k}
        return {"graph6": to_graph6(self.pattern)}

    @classmethod
    def from_json(cls, obj: dict) -> "TargetSpec":
        if "graph6" in obj:
            return cls(pattern=from_graph6(obj["graph6"]))
        return cls(m=int(obj["m"]), k=int(obj["k"]))

    def __str__(self) -> str:
        if self.pattern is None:
            return f"K_{self.m} - P_{self.k}"
        return f"pattern[{to_graph6(self.pattern)}]"


def _pattern_order(h: SimpleGraph) -> list[int]:
    """Pattern vertices, highest degree first, then staying connected to placed ones."""
    degs = h.degrees()
    remaining = set(range(h.n))
    order: list[int] = []
    placed_mask = 0
    while remaining:
        best = max(remaining, key=lambda v: ((h.rows[v] & placed_mask).bit_count(), degs[v], -v))
        order.append(best)
        placed_mask |= 1 << best
        remaining.discard(best)
    return order


def iter_embeddings(g: SimpleGraph, h: SimpleGraph) -> Iterator[dict[int, int]]:
    """Every injective map V(h) -> V(g) sending edges of h to edges of g.

    Non-induced containment. Pattern vertices are matched in descending
    degree order and candidates are pruned by degree.
    """
    if h.n > g.n:
        return
    order = _pattern_order(h)
    h_deg = h.degrees()
    g_deg = g.degrees()
    # earlier-placed pattern neighbours of each pattern vertex, by position
    back: list[list[int]] = []
    pos = {v: i for i, v in enumerate(order)}
    for i, v in enumerate(order):
        back.append([pos[u] for u in range(h.n) if h.rows[v] >> u & 1 and pos[u] < i])
    image = [0] * h.n
    size = h.n

    def extend(i: int, used: int) -> Iterator[list[int]]:
        if i == size:
            yield image
            return
        need = h_deg[order[i]]
        cand = ((1 << g.n) - 1) & ~used
        for j in back[i]:
            cand &= g.rows[image[j]]
        while cand:
            low = cand & -cand
            x = low.bit_length() - 1
            cand ^= low
            if g_deg[x] < need:
                continue
            image[i] = x
            yield from extend(i + 1, used | low)

    for img in extend(0, 0):
        yield {order[i]: img[i] for i in range(size)}


def contains_subgraph(g: SimpleGraph, h: SimpleGraph) -> dict[int, int] | None:
    """An embedding of h into g as a (not necessarily induced) subgraph, or None."""
    if h.n > g.n or h.edge_count() > g.edge_count():
        return None
    return next(iter_embeddings(g, h), None)


def automorphisms(h: SimpleGraph) -> list[tuple[int, ...]]:
    """All automorphisms of h as permutation tuples ``p`` (vertex v -> p[v])."""
    return sorted(tuple(emb[v] for v in range(h.n)) for emb in iter_embeddings(h, h))


def is_isomorphic(g: SimpleGraph, h: SimpleGraph) -> bool:
    """Same order and edge count plus a spanning embedding means isomorphic."""
    if g.n != h.n or g.edge_count() != h.edge_count():
        return False
    if sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return contains_subgraph(g, h) is not None


def canonical_form(g: SimpleGraph, limit: int = 8) -> tuple[int, tuple[int, ...]]:
    """Lexicographically largest adjacency code over degree-respecting relabelings.

    Only permutations that list vertices by descending degree are tried,
    which is enough because every isomorphism preserves degree.
    """
    if g.n > limit:
        raise ValueError(f"canonical form by exhaustive permutation is limited to n <= {limit}")
    degs = g.degrees()
    classes: dict[int, list[int]] = {}
    for v in range(g.n):
        classes.setdefault(degs[v], []).append(v)
    groups = [classes[d] for d in sorted(classes, reverse=True)]

    def orders(i: int) -> Iterator[tuple[int, ...]]:
        if i == len(groups):
            yield ()
            return
        for head in permutations(groups[i]):
            for tail in orders(i + 1):
                yield head + tail

    best: tuple[int, ...] | None = None
    for order in orders(0):
        # new label of old vertex order[j] is j
        code = tuple(
            int(g.rows[order[i]] >> order[j] & 1) for i in range(g.n) for j in range(i + 1, g.n)
        )
        if best is None or code > best:
            best = code
    return g.n, best or ()


def independence_number(g: SimpleGraph) -> int:
    """Size of a largest independent set, by branch and bound on bitmasks."""
    best = 0

    def search(cand: int, size: int) -> None:
        nonlocal best
        if cand == 0:
            if size > best:
                best = size
            return
        if size + cand.bit_count() <= best:
            return
        # branch on a vertex of maximum degree inside the candidate set
        v = max(
            (u for u in range(g.n) if cand >> u & 1),
            key=lambda u: (g.rows[u] & cand).bit_count(),
        )
        if (g.rows[v] & cand).bit_count() == 0:
            # everything left is mutually non-adjacent
            best = max(best, size + cand.bit_count())
            return
        search(cand & ~(1 << v) & ~g.rows[v], size + 1)
        search(cand & ~(1 << v), size)

    search((1 << g.n) - 1, 0)
    return best


def _g6_size(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    raise ValueError("graph too large for graph6")


def to_graph6(g: SimpleGraph) -> str:
    """graph6 encoding without the optional ``>>graph6<<`` header."""
    bits = [g.rows[i] >> j & 1 for j in range(1, g.n) for i in range(j)]
    bits.extend([0] * (-len(bits) % 6))
    chunks = (
        chr(63 + int("".join(str(b) for b in bits[p : p + 6]), 2)) for p in range(0, len(bits), 6)
    )
    return _g6_size(g.n) + "".join(chunks)


def from_graph6(text: str) -> SimpleGraph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[10:]
    if not s:
        raise ValueError("empty graph6 string")
    data = [ord(c) - 63 for c in s]
    if any(not 0 <= x <= 63 for x in data):
        raise ValueError(f"invalid graph6 character in {text!r}")
    if data[0] == 63:
        if len(data) > 1 and data[1] == 63:
            raise ValueError("graph6 8-byte size form is beyond supported orders")
        if len(data) < 4:
            raise ValueError("truncated graph6 size field")
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        body = data[4:]
    else:
        n = data[0]
        body = data[1:]
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) != need:
        raise ValueError(f"graph6 body has {len(body)} bytes, expected {need} for n={n}")
    bits = [(x >> s) & 1 for x in body for s in range(5, -1, -1)]
    pairs = ((i, j) for j in range(1, n) for i in range(j))
    return SimpleGraph.from_edges(n, (p for p, b in zip(pairs, bits) if b))


def to_edge_json(g: SimpleGraph) -> str:
    return json.dumps({"n": g.n, "edges": [list(e) for e in g.edges()]})


def from_edge_json(text: str | dict) -> SimpleGraph:
    obj = json.loads(text) if isinstance(text, str) else text
    return SimpleGraph.from_edges(int(obj["n"]), (tuple(e) for e in obj["edges"]))

