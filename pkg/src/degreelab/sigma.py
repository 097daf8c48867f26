"""Exact sigma(H, n) by a descending scan over degree-sum levels.

sigma(H, n) is the least even l such that every graphical n-term sequence
with sum >= l is potentially H-graphic. Scanning from the top sum n(n-1)
downwards, the first level holding a non-potentially sequence fixes
sigma = level + 2.
"""

from __future__ import annotations

import json
import logging
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .graph import (
    TargetSpec,
    contains_subgraph,
    extremal_construction,
    is_isomorphic,
)
from .graph import degree_sequence as graph_degree_sequence
from .potential import INCONCLUSIVE, NO, YES, Budget, is_potentially
from .realization import DEFAULT_ORACLE_LIMIT, OracleLimitExceeded, enumerate_realizations_backtrack
from .sequence import DegreeSequence, enumerate_graphical_sequences, format_sequence, is_graphical, parse_sequence

__all__ = [
    "ThresholdUndefined",
    "SigmaIncomplete",
    "SigmaResult",
    "SigmaCache",
    "Theorem1Report",
    "ConjectureVerdict",
    "lower_bound_formula",
    "in_conjecture_range",
    "sigma_exact",
    "spot_check",
    "verify_theorem1",
    "check_conjecture",
]

log = logging.getLogger(__name__)


class ThresholdUndefined(ValueError):
    """n is below the target order, so no sequence is potentially H-graphic."""


class SigmaIncomplete(RuntimeError):
    """A budgeted scan stopped with undecided sequences at a level that matters."""

    def __init__(self, message: str, progress: dict):
        super().__init__(message)
        self.progress = progress


def lower_bound_formula(m: int, n: int) -> int:
    """(2m - 6)n - (m - 3)(m - 2) + 2."""
    if not n >= m >= 4:
        raise ValueError(f"the bound needs n >= m >= 4 (got m={m}, n={n})")
    return (2 * m - 6) * n - (m - 3) * (m - 2) + 2


def in_conjecture_range(target: TargetSpec, n: int) -> bool:
    return target.is_family and n >= target.m >= target.k + 1 >= 4


@dataclass
class SigmaResult:
    target: TargetSpec
    n: int
    sigma: int
    witness: DegreeSequence
    sequences_checked: int
    wall_time: float = 0.0
    stats: dict = field(default_factory=dict)

    @property
    def formula(self) -> int | None:
        if self.target.is_family and self.n >= self.target.m >= 4:
            return lower_bound_formula(self.target.m, self.n)
        return None

    @property
    def conjecture(self) -> str:
        if not in_conjecture_range(self.target, self.n):
            return "out-of-range"
        return "holds" if self.sigma == self.formula else "fails"

    def to_json(self, timing: bool = True) -> dict:
        stats = dict(self.stats)
        stats["sequences_checked"] = self.sequences_checked
        if timing:
            stats["wall_time"] = round(self.wall_time, 6)
        return {
            "target": self.target.to_json(),
            "n": self.n,
            "sigma": self.sigma,
            "witness": format_sequence(self.witness),
            "formula": self.formula,
            "conjecture": self.conjecture,
            "stats": stats,
        }

    def dumps(self, timing: bool = True) -> str:
        return json.dumps(self.to_json(timing), sort_keys=True)

    @classmethod
    def from_json(cls, obj: dict | str) -> "SigmaResult":
        if isinstance(obj, str):
            obj = json.loads(obj)
        stats = dict(obj.get("stats", {}))
        checked = int(stats.pop("sequences_checked", 0))
        wall = float(stats.pop("wall_time", 0.0))
        return cls(
            target=TargetSpec.from_json(obj["target"]),
            n=int(obj["n"]),
            sigma=int(obj["sigma"]),
            witness=parse_sequence(obj["witness"]),
            sequences_checked=checked,
            wall_time=wall,
            stats=stats,
        )


def _decide(job: tuple[tuple[int, ...], dict, int | None]) -> tuple[str, int, str | None]:
    terms, target_json, max_nodes = job
    d = is_potentially(DegreeSequence(terms), TargetSpec.from_json(target_json), Budget(max_nodes))
    return d.verdict, int(d.stats.get("nodes", 0)), d.stats.get("found_in")


def _run_batch(jobs: list, pool: ProcessPoolExecutor | None) -> list:
    if pool is None or len(jobs) < 2:
        return [_decide(j) for j in jobs]
    chunk = max(1, len(jobs) // (4 * pool._max_workers))
    return list(pool.map(_decide, jobs, chunksize=chunk))


def sigma_exact(
    target: TargetSpec,
    n: int,
    workers: int = 1,
    budget: Budget | None = None,
    retry_exact: bool = True,
    cache: "SigmaCache | None" = None,
) -> SigmaResult:
    """Compute sigma(target, n) exactly.

    With a node budget, undecided sequences are retried without a budget when
    ``retry_exact`` is set; otherwise SigmaIncomplete is raised as soon as an
    undecided sequence could change the answer.
    """
    h = target.order
    if n < h:
        raise ThresholdUndefined(f"threshold undefined: n={n} is below the target order {h}")
    if cache is not None:
        hit = cache.get(target, n)
        if hit is not None:
            return hit

    start = time.perf_counter()
    tj = target.to_json()
    max_nodes = budget.max_nodes if budget is not None else None
    checked = yes = no = deferred = nodes = fallback = 0
    levels = 0
    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for level in range(n * (n - 1), -1, -2):
            seqs = list(enumerate_graphical_sequences(n, level, level))
            if not seqs:
                continue
            levels += 1
            results = _run_batch([(s.terms, tj, max_nodes) for s in seqs], pool)
            pending = [i for i, r in enumerate(results) if r[0] == INCONCLUSIVE]
            if pending:
                deferred += len(pending)
                if not retry_exact:
                    raise SigmaIncomplete(
                        f"{len(pending)} sequence(s) at sum {level} exceeded the node budget",
                        {
                            "target": tj,
                            "n": n,
                            "level": level,
                            "levels_completed": levels - 1,
                            "sequences_checked": checked,
                            "undecided": [format_sequence(seqs[i]) for i in pending],
                        },
                    )
                redo = _run_batch([(seqs[i].terms, tj, None) for i in pending], pool)
                for i, r in zip(pending, redo):
                    results[i] = r
            checked += len(seqs)
            for verdict, k, found_in in results:
                nodes += k
                if verdict == YES:
                    yes += 1
                    if found_in == "fallback":
                        fallback += 1
                else:
                    no += 1
            failing = [s for s, r in zip(seqs, results) if r[0] == NO]
            if failing:
                # seqs are in lexicographically descending order
                witness = failing[0]
                stats = {
                    "levels_scanned": levels,
                    "yes": yes,
                    "no": no,
                    "no_at_threshold": len(failing),
                    "deferred": deferred,
                    "search_nodes": nodes,
                    "fallback_witnesses": fallback,
                    "code_version": __version__,
                }
                result = SigmaResult(
                    target=target,
                    n=n,
                    sigma=level + 2,
                    witness=witness,
                    sequences_checked=checked,
                    wall_time=time.perf_counter() - start,
                    stats=stats,
                )
                if cache is not None:
                    cache.put(result)
                return result
    finally:
        if pool is not None:
            pool.shutdown()
    raise AssertionError("the all-zero sequence is never potentially H-graphic")


def spot_check(result: SigmaResult, samples: int = 25, seed: int = 0) -> dict:
    """Re-decide the witness and a seeded sample of sequences at sum = sigma."""
    witness = is_potentially(result.witness, result.target)
    level = [s for s in enumerate_graphical_sequences(result.n, result.sigma, result.sigma)]
    rng = random.Random(seed)
    picked = level if len(level) <= samples else rng.sample(level, samples)
    failures = [format_sequence(s) for s in picked if not is_potentially(s, result.target).is_yes]
    return {
        "seed": seed,
        "witness_verdict": witness.verdict,
        "sampled": len(picked),
        "sample_failures": failures,
        "ok": witness.verdict == NO and not failures,
    }


class SigmaCache:
    """Append-only JSON-lines store of SigmaResults keyed by (target, n, version)."""

    def __init__(self, path: str | Path):
        self.path = Path(path)

    @staticmethod
    def _key(target: TargetSpec, n: int, version: str) -> str:
        return json.dumps([target.to_json(), n, version], sort_keys=True)

    def _entries(self) -> dict[str, SigmaResult]:
        out: dict[str, SigmaResult] = {}
        if not self.path.exists():
            return out
        with self.path.open() as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                obj = json.loads(line)
                res = SigmaResult.from_json(obj)
                out[self._key(res.target, res.n, obj["stats"].get("code_version", ""))] = res
        return out

    def get(self, target: TargetSpec, n: int) -> SigmaResult | None:
        res = self._entries().get(self._key(target, n, __version__))
        if res is None:
            return None
        # a cached answer is only reused if its witness still decides no
        if not is_graphical(res.witness) or res.witness.sum != res.sigma - 2:
            log.warning("discarding malformed cache entry for %s, n=%d", target, n)
            return None
        if is_potentially(res.witness, target).verdict != NO:
            log.warning("cached witness %s no longer decides no; recomputing", res.witness)
            return None
        return res

    def put(self, result: SigmaResult) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open("a") as fh:
            fh.write(result.dumps() + "\n")


@dataclass
class Theorem1Report:
    m: int
    k: int
    n: int
    sequence: DegreeSequence
    bound: int
    sequence_matches: bool
    graphical: bool
    sum_matches: bool
    avoids_target: bool
    unique: bool | None
    realizations: int | None = None
    note: str = ""

    @property
    def passed(self) -> bool:
        return (
            self.sequence_matches
            and self.graphical
            and self.sum_matches
            and self.avoids_target
            and self.unique is not False
        )

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "k": self.k,
            "n": self.n,
            "sequence": format_sequence(self.sequence),
            "bound": self.bound,
            "checks": {
                "a_sequence": self.sequence_matches and self.graphical,
                "b_sum": self.sum_matches,
                "c_avoids_target": self.avoids_target,
                "d_unique": self.unique,
            },
            "realizations": self.realizations,
            "note": self.note,
            "passed": self.passed,
        }


def verify_theorem1(m: int, k: int, n: int, oracle_limit: int = DEFAULT_ORACLE_LIMIT) -> Theorem1Report:
    """Machine-check the lower-bound construction K_{m-3} + (n-m+3 isolated vertices).

    (a) its degree sequence and graphicality, (b) its sum, (c) that it avoids
    K_m - P_k, (d) that every realization of its sequence is isomorphic to it.
    Check (d) is skipped (left as None) above ``oracle_limit``.
    """
    if not n >= m >= k + 1 >= 4:
        raise ValueError(f"need n >= m >= k + 1 >= 4 (got m={m}, k={k}, n={n})")
    g = extremal_construction(m, n)
    expected = DegreeSequence((n - 1,) * (m - 3) + (m - 3,) * (n - m + 3))
    seq = graph_degree_sequence(g)
    bound = lower_bound_formula(m, n)
    target = TargetSpec.family(m, k)
    avoids = contains_subgraph(g, target.graph) is None
    unique: bool | None = None
    count: int | None = None
    note = ""
    try:
        count = 0
        unique = True
        for other in enumerate_realizations_backtrack(expected, oracle_limit):
            count += 1
            if not is_isomorphic(other, g):
                unique = False
                break
    except OracleLimitExceeded as exc:
        unique, count, note = None, None, f"uniqueness check refused: {exc}"
    return Theorem1Report(
        m=m,
        k=k,
        n=n,
        sequence=seq,
        bound=bound,
        sequence_matches=seq == expected,
        graphical=is_graphical(seq),
        sum_matches=seq.sum == bound - 2,
        avoids_target=avoids,
        unique=unique,
        realizations=count,
        note=note,
    )


@dataclass
class ConjectureVerdict:
    status: str  # holds | fails | inconclusive
    m: int
    k: int
    n: int
    formula: int
    sigma: int | None = None
    witness: DegreeSequence | None = None
    result: SigmaResult | None = None
    progress: dict | None = None

    @property
    def discrepancy(self) -> int | None:
        return None if self.sigma is None else self.sigma - self.formula

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "k": self.k,
            "n": self.n,
            "status": self.status,
            "formula": self.formula,
            "sigma": self.sigma,
            "discrepancy": self.discrepancy,
            "witness": format_sequence(self.witness) if self.witness is not None else None,
            "progress": self.progress,
        }


def check_conjecture(
    m: int, k: int, n: int, budget: Budget | None = None, workers: int = 1
) -> ConjectureVerdict:
    """Compare the exact sigma(K_m - P_k, n) with the closed-form bound."""
    if not n >= m >= k + 1 >= 4:
        raise ValueError(f"conjecture needs n >= m >= k + 1 >= 4 (got m={m}, k={k}, n={n})")
    formula = lower_bound_formula(m, n)
    try:
        res = sigma_exact(TargetSpec.family(m, k), n, workers=workers, budget=budget, retry_exact=False)
    except SigmaIncomplete as exc:
        return ConjectureVerdict("inconclusive", m, k, n, formula, progress=exc.progress)
    status = "holds" if res.sigma == formula else "fails"
    return ConjectureVerdict(status, m, k, n, formula, res.sigma, res.witness, res)
