"""Command-line front end.

Exit codes
    0  success / graphical / yes
    1  non-graphical / no / a verification check failed
    2  usage error
    3  inconclusive (a node budget ran out)
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Sequence

from .graph import TargetSpec, to_graph6
from .potential import INCONCLUSIVE, YES, Budget, is_potentially
from .realization import (
    DEFAULT_ORACLE_LIMIT,
    OracleLimitExceeded,
    enumerate_realizations_backtrack,
    enumerate_realizations_swapbfs,
    havel_hakimi_realization,
)
from .sequence import SequenceParseError, erdos_gallai_violation, format_sequence, is_graphical, parse_sequence
from .sigma import (
    SigmaCache,
    SigmaIncomplete,
    check_conjecture,
    in_conjecture_range,
    sigma_exact,
    verify_theorem1,
)

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    json: bool = False
    workers: int = 1
    oracle_limit: int = DEFAULT_ORACLE_LIMIT
    budget_nodes: int | None = None
    cache: str | None = None
    seed: int = 0

    def __post_init__(self) -> None:
        if self.workers < 1:
            raise UsageError("--workers must be at least 1")
        if self.oracle_limit < 1:
            raise UsageError("--oracle-limit must be at least 1")
        if self.budget_nodes is not None and self.budget_nodes < 1:
            raise UsageError("--budget-nodes must be at least 1")

    @property
    def budget(self) -> Budget | None:
        return Budget(self.budget_nodes) if self.budget_nodes is not None else None


def _emit(cfg: RunConfig, human: str, payload: dict) -> None:
    if cfg.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(human)


def _parse(text: str):
    try:
        return parse_sequence(text)
    except (SequenceParseError, ValueError) as exc:
        raise UsageError(str(exc)) from exc


def _family(m: int, k: int) -> TargetSpec:
    try:
        return TargetSpec.family(m, k)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_check(args, cfg: RunConfig) -> int:
    seq = _parse(args.sequence)
    ok = is_graphical(seq)
    payload = {"sequence": format_sequence(seq), "graphical": ok, "sum": seq.sum}
    if ok:
        human = f"({seq}) is graphical, sum {seq.sum}"
    elif seq.sum % 2:
        payload["failure"] = "odd sum"
        human = f"({seq}) is not graphical: odd degree sum {seq.sum}"
    else:
        k = erdos_gallai_violation(seq.terms)
        payload["failure"] = "erdos-gallai"
        payload["failure_index"] = k
        human = f"({seq}) is not graphical: Erdős–Gallai inequality fails at k={k}"
    _emit(cfg, human, payload)
    return EXIT_OK if ok else EXIT_NO


def cmd_realize(args, cfg: RunConfig) -> int:
    seq = _parse(args.sequence)
    if not is_graphical(seq):
        _emit(cfg, f"({seq}) is not graphical", {"sequence": format_sequence(seq), "graphical": False})
        return EXIT_NO
    if args.all == "none":
        graphs = [havel_hakimi_realization(seq)]
    elif args.all == "backtrack":
        try:
            graphs = list(enumerate_realizations_backtrack(seq, cfg.oracle_limit))
        except OracleLimitExceeded as exc:
            raise UsageError(str(exc)) from exc
    else:
        graphs = list(enumerate_realizations_swapbfs(seq))
    lines = [to_graph6(g) for g in graphs]
    _emit(cfg, "\n".join(lines), {"sequence": format_sequence(seq), "graph6": lines})
    return EXIT_OK


def cmd_potential(args, cfg: RunConfig) -> int:
    seq = _parse(args.sequence)
    target = _family(args.m, args.k)
    d = is_potentially(seq, target, cfg.budget)
    human = f"({seq}) potentially {target}-graphic: {d.verdict} ({d.reason})"
    if d.verdict == YES:
        human += f"\nwitness {to_graph6(d.witness)}"
    _emit(cfg, human, d.to_json())
    return {YES: EXIT_OK, INCONCLUSIVE: EXIT_INCONCLUSIVE}.get(d.verdict, EXIT_NO)


def _sigma_args(m: int, k: int, n: int) -> TargetSpec:
    if not n >= m >= k + 1 >= 3:
        raise UsageError(f"need n >= m >= k + 1 >= 3 (got m={m}, k={k}, n={n})")
    return _family(m, k)


def cmd_sigma(args, cfg: RunConfig) -> int:
    target = _sigma_args(args.m, args.k, args.n)
    cache = SigmaCache(cfg.cache) if cfg.cache else None
    try:
        res = sigma_exact(
            target, args.n, workers=cfg.workers, budget=cfg.budget, retry_exact=False, cache=cache
        )
    except SigmaIncomplete as exc:
        _emit(cfg, f"budget exhausted: {exc}\nprogress: {json.dumps(exc.progress)}",
              {"status": "inconclusive", "progress": exc.progress})
        return EXIT_INCONCLUSIVE
    human = (
        f"sigma({target}, n={args.n}) = {res.sigma}\n"
        f"witness ({res.witness}) sum {res.witness.sum}\n"
        f"formula {res.formula}\n"
        f"conjecture {res.conjecture}"
    )
    _emit(cfg, human, res.to_json())
    return EXIT_OK


def cmd_verify_theorem1(args, cfg: RunConfig) -> int:
    if not args.n >= args.m >= args.k + 1 >= 4:
        raise UsageError(f"need n >= m >= k + 1 >= 4 (got m={args.m}, k={args.k}, n={args.n})")
    rep = verify_theorem1(args.m, args.k, args.n, oracle_limit=cfg.oracle_limit)
    checks = rep.to_json()["checks"]
    human = "\n".join(
        [f"construction K_{args.m - 3} + {args.n - args.m + 3} isolated vertices, sequence ({rep.sequence})"]
        + [f"  {name}: {value}" for name, value in checks.items()]
        + ([f"  {rep.note}"] if rep.note else [])
        + [f"lower bound {rep.bound}: {'verified' if rep.passed else 'FAILED'}"]
    )
    _emit(cfg, human, rep.to_json())
    return EXIT_OK if rep.passed else EXIT_NO


def cmd_conjecture_scan(args, cfg: RunConfig) -> int:
    rows = []
    code = EXIT_OK
    for m in args.m:
        for k in args.k:
            for n in args.n:
                if not n >= m >= k + 1 >= 3:
                    continue
                target = _family(m, k)
                if in_conjecture_range(target, n):
                    v = check_conjecture(m, k, n, budget=cfg.budget, workers=cfg.workers)
                    row = v.to_json()
                    if v.status == "inconclusive":
                        code = EXIT_INCONCLUSIVE
                else:
                    res = sigma_exact(target, n, workers=cfg.workers)
                    row = {"m": m, "k": k, "n": n, "status": "out-of-range", "sigma": res.sigma,
                           "formula": res.formula, "witness": format_sequence(res.witness)}
                rows.append(row)
    if not rows:
        raise UsageError("no (m, k, n) combination satisfies n >= m >= k + 1 >= 3")
    human = "\n".join(
        f"m={r['m']} k={r['k']} n={r['n']}: {r['status']} sigma={r['sigma']} formula={r['formula']}"
        for r in rows
    )
    _emit(cfg, human, {"results": rows})
    return code


def cmd_verify_paper(args, cfg: RunConfig) -> int:
    from .verification import run_all

    results = run_all(max_n=args.max_n, workers=cfg.workers, seed=cfg.seed, oracle_limit=cfg.oracle_limit)
    failed = [r for r in results if r.gating and not r.passed]
    if cfg.json:
        print(json.dumps({
            "seed": cfg.seed,
            "max_n": args.max_n,
            "criteria": [
                {"number": r.number, "title": r.title, "passed": r.passed, "gating": r.gating,
                 "skipped": r.skipped, "detail": r.detail}
                for r in results
            ],
            "passed": not failed,
        }, sort_keys=True))
    else:
        for r in results:
            print(r.line())
            for line in r.detail:
                print(f"    {line}")
        print(f"seed {cfg.seed}; {'all gating criteria passed' if not failed else f'{len(failed)} criterion(s) failed'}")
    return EXIT_NO if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--workers", type=int, default=1, metavar="N")
    common.add_argument("--oracle-limit", type=int, default=DEFAULT_ORACLE_LIMIT, metavar="N",
                        help="largest n for exhaustive realization enumeration")
    common.add_argument("--budget-nodes", type=int, default=None, metavar="N",
                        help="search-node budget per decision (default: unlimited)")
    common.add_argument("--cache", default=None, metavar="PATH", help="JSON-lines cache of sigma results")
    common.add_argument("--seed", type=int, default=0, metavar="N")

    parser = argparse.ArgumentParser(prog="degreelab", description="Degree-sequence laboratory.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="is a sequence graphical?")
    p.add_argument("sequence")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("realize", parents=[common], help="print realizations in graph6")
    p.add_argument("sequence")
    p.add_argument("--all", choices=["none", "backtrack", "swap"], default="none",
                   help="enumerate every labeled realization instead of one")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("potential", parents=[common], help="is a sequence potentially K_m - P_k graphic?")
    p.add_argument("sequence")
    p.add_argument("m", type=int)
    p.add_argument("k", type=int, help="number of removed path edges")
    p.set_defaults(func=cmd_potential)

    p = sub.add_parser("sigma", parents=[common], help="exact sigma(K_m - P_k, n)")
    p.add_argument("m", type=int)
    p.add_argument("k", type=int)
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_sigma)

    p = sub.add_parser("verify-theorem1", parents=[common], help="check the lower-bound construction")
    p.add_argument("m", type=int)
    p.add_argument("k", type=int)
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_verify_theorem1)

    p = sub.add_parser("conjecture-scan", parents=[common], help="compare sigma with the closed form")
    p.add_argument("--m", type=int, nargs="+", default=[6])
    p.add_argument("--k", type=int, nargs="+", default=[3, 4, 5])
    p.add_argument("--n", type=int, nargs="+", default=[6])
    p.set_defaults(func=cmd_conjecture_scan)

    p = sub.add_parser("verify-paper", parents=[common], help="run every acceptance check")
    p.add_argument("--max-n", type=int, default=8)
    p.set_defaults(func=cmd_verify_paper)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = RunConfig(
            json=args.json,
            workers=args.workers,
            oracle_limit=args.oracle_limit,
            budget_nodes=args.budget_nodes,
            cache=args.cache,
            seed=args.seed,
        )
        return args.func(args, cfg)
    except UsageError as exc:
        print(f"degreelab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
