"""Deciding whether a sequence is potentially H-graphic."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

from .graph import SimpleGraph, TargetSpec, contains_subgraph, degree_sequence, from_graph6, to_graph6
from .realization import BudgetExceeded, SearchStats, _class_layout, _count_vectors, search_containing
from .sequence import DegreeSequence, _graphical_sorted, format_sequence, is_graphical, parse_sequence

__all__ = [
    "Budget",
    "InfeasiblePlacement",
    "PotentialDecision",
    "is_potentially",
    "residual_after_placement",
    "necessary_condition_holds",
]

YES, NO, INCONCLUSIVE = "yes", "no", "inconclusive"


@dataclass(frozen=True)
class Budget:
    """Search limits. ``max_nodes=None`` means unlimited."""

    max_nodes: int | None = None


class InfeasiblePlacement(ValueError):
    """Subtracting the pattern degrees drove some term below zero."""


@dataclass
class PotentialDecision:
    sequence: DegreeSequence
    target: TargetSpec
    verdict: str
    witness: SimpleGraph | None = None
    reason: str = ""
    stats: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.verdict not in (YES, NO, INCONCLUSIVE):
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if (self.verdict == YES) != (self.witness is not None):
            raise ValueError("a witness is present exactly when the verdict is yes")
        if self.verdict == NO and not self.stats.get("exhausted"):
            raise ValueError("a no verdict must record an exhausted search")
        if self.witness is not None:
            if degree_sequence(self.witness) != self.sequence:
                raise ValueError("witness does not realize the sequence")
            if contains_subgraph(self.witness, self.target.graph) is None:
                raise ValueError("witness does not contain the target")

    @property
    def is_yes(self) -> bool:
        return self.verdict == YES

    def to_json(self) -> dict:
        return {
            "sequence": format_sequence(self.sequence),
            "target": self.target.to_json(),
            "verdict": self.verdict,
            "witness_graph6": to_graph6(self.witness) if self.witness is not None else None,
            "reason": self.reason,
            "stats": self.stats,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, obj: dict | str) -> "PotentialDecision":
        if isinstance(obj, str):
            obj = json.loads(obj)
        w = obj.get("witness_graph6")
        return cls(
            sequence=parse_sequence(obj["sequence"]),
            target=TargetSpec.from_json(obj["target"]),
            verdict=obj["verdict"],
            witness=from_graph6(w) if w else None,
            reason=obj.get("reason", ""),
            stats=dict(obj.get("stats", {})),
        )


def residual_after_placement(
    seq: DegreeSequence, target: TargetSpec | SimpleGraph, positions: Sequence[int]
) -> DegreeSequence:
    """Subtract the pattern degree of vertex i from ``seq[positions[i]]`` and re-sort.

    A graphical result is necessary for the placement to work, not sufficient.
    """
    pattern = target.graph if isinstance(target, TargetSpec) else target
    if len(positions) != pattern.n:
        raise ValueError(f"need {pattern.n} positions, got {len(positions)}")
    if len(set(positions)) != len(positions):
        raise ValueError("positions must be distinct")
    r = list(seq.terms)
    for v, p in enumerate(positions):
        if not 0 <= p < seq.n:
            raise ValueError(f"position {p} outside the sequence")
        r[p] -= pattern.degree(v)
        if r[p] < 0:
            raise InfeasiblePlacement(
                f"pattern vertex {v} needs degree {pattern.degree(v)} but position {p} only has {seq[p]}"
            )
    return DegreeSequence(tuple(r))


def necessary_condition_holds(seq: DegreeSequence, pattern: SimpleGraph) -> bool:
    """Some choice of positions leaves a graphical residual under the sorted pairing."""
    if pattern.n > seq.n:
        return False
    layout = _class_layout(seq.terms)
    demand = sorted(pattern.degrees(), reverse=True)
    for x in _count_vectors([c for _, _, c in layout], pattern.n):
        supply = [v for (v, _, _), cnt in zip(layout, x) for _ in range(cnt)]
        resid = [s - t for s, t in zip(supply, demand)]
        if min(resid) < 0:
            continue
        rest = [v for (v, _, c), cnt in zip(layout, x) for _ in range(c - cnt)]
        if _graphical_sorted(sorted(resid + rest, reverse=True)):
            return True
    return False


def is_potentially(
    seq: DegreeSequence, target: TargetSpec, budget: Budget | None = None
) -> PotentialDecision:
    """Exact decision, with a re-verified witness on yes.

    Inconclusive is only returned when ``budget`` sets a node limit that runs out.
    """
    pattern = target.graph

    def no(stage: str, reason: str, stats: dict | None = None) -> PotentialDecision:
        cert = dict(stats or {})
        cert.update(stage=stage, exhausted=True)
        return PotentialDecision(seq, target, NO, reason=reason, stats=cert)

    if not is_graphical(seq):
        return no("graphicality", "not graphical")
    if seq.n < pattern.n:
        return no("order", f"only {seq.n} vertices, target needs {pattern.n}")
    if seq.sum < 2 * pattern.edge_count():
        return no("sum", f"degree sum {seq.sum} cannot carry {pattern.edge_count()} target edges")
    if not necessary_condition_holds(seq, pattern):
        return no("residual-filter", "no placement leaves a graphical residual")

    max_nodes = budget.max_nodes if budget is not None else None
    try:
        g, stats = search_containing(seq, pattern, "fallback", max_nodes)
    except BudgetExceeded as exc:
        return PotentialDecision(
            seq, target, INCONCLUSIVE, reason=str(exc), stats={"stage": "search", "max_nodes": max_nodes}
        )
    if g is None:
        return no("search", "all placements and completions exhausted", stats.to_json())
    cert = stats.to_json()
    cert["stage"] = "search"
    return PotentialDecision(seq, target, YES, witness=g, reason="witness found", stats=cert)


__all__ += ["YES", "NO", "INCONCLUSIVE", "SearchStats"]
