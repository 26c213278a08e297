"""Command-line front end: instance files, decisions, analysis, benchmarks.

Reports are JSON with a version field (``"schema": 1``) and every rational
printed as an exact ``[numerator, denominator]`` pair, so byte-identical
inputs and flags produce byte-identical reports.  Exit codes follow the
verdict: 0 yes, 1 no, 2 unknown or error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import List, Optional, Sequence

import numpy as np

from . import _kernels
from .decision import Decision, _jsonify, decide_brute, decide_fast, decide_slow
from .hypergraph import (Hypergraph, anchored_barrier, complete, parse,
                         parity_barrier_even, parity_barrier_odd,
                         random_dense, serialize, space_barrier)
from .lattice import coset_group_order, is_full_pair
from .reachability import (CodegreeHypothesisError, PipelineConfig,
                           PipelineInvariantError, run_pipeline)

SCHEMA = 1
BUDGET_ENV = "HYPERMATCH_BUDGET"
GENERATOR_KINDS = ("space", "parity-even", "parity-odd", "kkm", "random",
                   "complete")
BENCH_COLUMNS = ("instance", "n", "k", "method", "time", "nodes", "verdict")


def _fraction_flag(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--gamma", type=_fraction_flag, default=Fraction(1, 20),
                        help="codegree slack for the pipeline (rational)")
    parser.add_argument("--alpha", type=_fraction_flag, default=Fraction(1, 100),
                        help="density demanded when reassigning leftovers")
    parser.add_argument("--mu0", type=_fraction_flag, default=Fraction(1, 100),
                        help="seed for the robustness threshold")
    parser.add_argument("--t-cap", type=int, default=2,
                        help="cap on the reachability order")
    parser.add_argument("--validity-floor", type=int, default=0,
                        help="n below which completeness is not guaranteed")
    parser.add_argument("--budget", type=int, default=None,
                        help=f"search budget (falls back to ${BUDGET_ENV})")
    parser.add_argument("--ignore-codegree", action="store_true",
                        help="run out-of-regime instances instead of erroring")
    parser.add_argument("--jobs", type=int, default=1,
                        help="worker processes (bench rows only)")
    parser.add_argument("--deterministic", action="store_true",
                        help="byte-reproducible output (bench zeroes timings)")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for randomized instances")


def _config_from(args: argparse.Namespace) -> PipelineConfig:
    budget = args.budget
    if budget is None:
        raw = os.environ.get(BUDGET_ENV, "").strip()
        if raw:
            budget = int(raw)
    return PipelineConfig(gamma=args.gamma, alpha=args.alpha, mu0=args.mu0,
                          t_cap=args.t_cap,
                          validity_floor=args.validity_floor,
                          budget=budget,
                          require_codegree=not args.ignore_codegree)


def _config_json(cfg: PipelineConfig) -> dict:
    return {
        "gamma": _jsonify(cfg.gamma),
        "alpha": _jsonify(cfg.alpha),
        "mu0": _jsonify(cfg.mu0),
        "t_cap": cfg.t_cap,
        "validity_floor": cfg.validity_floor,
        "budget": cfg.budget,
        "require_codegree": cfg.require_codegree,
    }


def _instance_json(H: Hypergraph) -> dict:
    return {"n": H.n, "k": H.k, "edges": len(H.edges)}


def _emit(report: dict, out: Optional[str]) -> None:
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _read_instance(path: str) -> Hypergraph:
    if path == "-":
        return parse(sys.stdin.read())
    with open(path) as fh:
        return parse(fh.read())


# -- generate -----------------------------------------------------------------


def make_instance(kind: str, n: int, k: int, x: int, s: int, seed: int,
                  codegree: Optional[int]) -> Hypergraph:
    if kind == "space":
        return space_barrier(n, k, s)
    if kind == "parity-even":
        return parity_barrier_even(n, k, x)
    if kind == "parity-odd":
        return parity_barrier_odd(n, k, x)
    if kind == "kkm":
        return anchored_barrier(n)
    if kind == "random":
        target = codegree if codegree is not None else max(1, n // k)
        return random_dense(n, k, target, seed)
    if kind == "complete":
        return complete(n, k)
    raise ValueError(f"unknown kind {kind!r}")


def cmd_generate(args: argparse.Namespace) -> int:
    H = make_instance(args.kind, args.n, args.k, args.x, args.s, args.seed,
                      args.codegree)
    text = serialize(H)
    if args.out is None or args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)
    return 0


# -- decide -------------------------------------------------------------------

_EXIT_BY_VERDICT = {"yes": 0, "no": 1, "unknown": 2}


def _run_method(H: Hypergraph, method: str, cfg: PipelineConfig) -> Decision:
    if method == "brute":
        return decide_brute(H, cfg.oracle_budget())
    if method == "slow":
        return decide_slow(H, cfg)
    if method == "fast":
        return decide_fast(H, cfg)
    raise ValueError(f"unknown method {method!r}")


def cmd_decide(args: argparse.Namespace) -> int:
    H = _read_instance(args.file)
    cfg = _config_from(args)
    methods = ["brute", "slow", "fast"] if args.method == "all" else [args.method]
    report = {
        "schema": SCHEMA,
        "command": "decide",
        "instance": _instance_json(H),
        "config": _config_json(cfg),
        "results": [],
    }
    try:
        for method in methods:
            report["results"].append(_run_method(H, method, cfg).to_json())
    except CodegreeHypothesisError:
        report["error"] = {
            "kind": "codegree-hypothesis",
            "min_codegree": H.min_codegree(),
            "required": _jsonify(Fraction(H.n, H.k)),
        }
        _emit(report, args.out)
        return 2
    except PipelineInvariantError as exc:
        report["error"] = {"kind": "pipeline-invariant", "message": str(exc)}
        _emit(report, args.out)
        return 2
    verdicts = sorted({r["verdict"] for r in report["results"]})
    if len(methods) > 1:
        report["agreement"] = {
            "methods": methods,
            "verdicts": verdicts,
            "disagreements": [
                {"method": r["method"], "verdict": r["verdict"]}
                for r in report["results"] if r["verdict"] != verdicts[0]
            ] if len(verdicts) > 1 else [],
        }
    report["verdict"] = verdicts[0] if len(verdicts) == 1 else "unknown"
    _emit(report, args.out)
    return _EXIT_BY_VERDICT[report["verdict"]]


# -- analyze ------------------------------------------------------------------


def cmd_analyze(args: argparse.Namespace) -> int:
    H = _read_instance(args.file)
    cfg = _config_from(args)
    report = {
        "schema": SCHEMA,
        "command": "analyze",
        "instance": _instance_json(H),
        "config": _config_json(cfg),
    }
    try:
        result = run_pipeline(H, cfg)
    except CodegreeHypothesisError:
        report["error"] = {
            "kind": "codegree-hypothesis",
            "min_codegree": H.min_codegree(),
            "required": _jsonify(Fraction(H.n, H.k)),
        }
        _emit(report, args.out)
        return 2
    except PipelineInvariantError as exc:
        report["error"] = {"kind": "pipeline-invariant", "message": str(exc)}
        _emit(report, args.out)
        return 2
    L = result.lattice
    report["pipeline"] = {
        "d_prime": result.p0_prime.d,
        "p0_parts": [list(p) for p in result.p0.parts],
        "p0_prime_parts": [list(p) for p in result.p0_prime.parts],
        "mu": _jsonify(result.mu),
        "robust_generators": sorted(list(v) for v in result.robust_set),
        "lattice_basis": [list(row) for row in L.basis],
        "full_pair": is_full_pair(result.p0_prime, L, H.k),
        "coset_order": coset_group_order(L, result.p0_prime.d, H.k),
        "merge_trace": [list(step) for step in result.merge_trace],
        "order_cap": result.order_cap,
        "violations": list(result.violations),
    }
    _emit(report, args.out)
    return 0


# -- bench --------------------------------------------------------------------


def _default_suite(seed: int):
    """Named instances covering every generator family, small enough to time."""
    return [
        ("complete-9-3", complete(9, 3)),
        ("space-9-3-2", space_barrier(9, 3, 2)),
        ("parity-even-12-3-5", parity_barrier_even(12, 3, 5)),
        ("parity-odd-9-3-2", parity_barrier_odd(9, 3, 2)),
        ("kkm-12", anchored_barrier(12)),
        (f"random-9-3-s{seed}", random_dense(9, 3, 3, seed)),
    ]


def _bench_decision_row(task) -> tuple:
    name, H, method, budget = task
    cfg = PipelineConfig(budget=budget, require_codegree=False,
                         validity_floor=0)
    start = time.perf_counter()
    try:
        decision = _run_method(H, method, cfg)
        verdict = decision.verdict
        nodes = decision.budgets.get("nodes", 0)
    except Exception:
        verdict = "error"
        nodes = 0
    elapsed = time.perf_counter() - start
    return (name, H.n, H.k, method, elapsed, nodes, verdict)


def _timed(fn):
    """Steady-state timing: one warmup call, then the measured call."""
    fn()
    start = time.perf_counter()
    result = fn()
    return time.perf_counter() - start, result


def _bench_kernel_rows(seed: int) -> List[tuple]:
    H = random_dense(16, 3, 5, seed)
    masks = [sum(1 << v for v in e) for e in H.edges]
    grouped, starts = _kernels.group_edges_by_min(H.n, masks)

    # Thinned odd-barrier edges: the barrier bipartition stays compliant,
    # so the enumeration provably has output while pruning stays partial.
    a_edges = parity_barrier_odd(16, 3, 5).edges[seed % 23::23]
    a_flat, a_starts = _kernels.group_edges_by_max(16, 3, a_edges)
    a_allowed = np.array([(code % 4) % 2 == 1 for code in range(4 ** 2)])

    backends = [("numba", True)] if _kernels.numba_available() else []
    backends.append(("python", False))
    rows = []
    results = {}

    def run_matchtable(jit):
        impl = (_kernels._max_matching_table_jit if jit
                else _kernels._max_matching_table_py)
        return np.asarray(impl(H.n, grouped, starts))

    def run_assignments(jit):
        impl = (_kernels._compliant_assignments_jit if jit
                else _kernels._compliant_assignments_py)
        out = np.zeros((200_000, 16), dtype=np.int8)
        count = impl(16, 2, 3, a_flat, a_starts, a_allowed, True, out)
        return int(count), out[:count].copy()

    table = run_matchtable(backends[-1][1])

    def run_reach(jit):
        impl = (_kernels._pair_reach_counts_jit if jit
                else _kernels._pair_reach_counts_py)
        return np.asarray(impl(H.n, H.k, 2, table))

    for label, jit in backends:
        elapsed, t = _timed(lambda: run_matchtable(jit))
        results[("matchtable", label)] = t
        rows.append(("kernel-matchtable-16", H.n, H.k, label, elapsed,
                     int(t.size), "pending"))
    for label, jit in backends:
        elapsed, (count, out) = _timed(lambda: run_assignments(jit))
        results[("assignments", label)] = (count, out)
        rows.append(("kernel-assignments-16", 16, 3, label, elapsed,
                     count, "pending"))
    for label, jit in backends:
        elapsed, counts = _timed(lambda: run_reach(jit))
        results[("reach", label)] = counts
        rows.append(("kernel-reach-16", H.n, H.k, label, elapsed,
                     int(counts.sum()), "pending"))

    def agree(kernel: str) -> bool:
        if len(backends) < 2:
            return True
        a = results[(kernel, backends[0][0])]
        b = results[(kernel, backends[1][0])]
        if kernel == "assignments":
            return a[0] == b[0] and np.array_equal(a[1], b[1])
        return np.array_equal(a, b)

    verdicts = {"kernel-matchtable-16": agree("matchtable"),
                "kernel-assignments-16": agree("assignments"),
                "kernel-reach-16": agree("reach")}
    return [(name, n, k, label, elapsed, nodes,
             "ok" if verdicts[name] else "mismatch")
            for (name, n, k, label, elapsed, nodes, _) in rows]


def cmd_bench(args: argparse.Namespace) -> int:
    budget = args.budget
    if budget is None:
        raw = os.environ.get(BUDGET_ENV, "").strip()
        if raw:
            budget = int(raw)
    if args.suite == "kernels":
        rows = _bench_kernel_rows(args.seed)
    else:
        tasks = [(name, H, method, budget)
                 for name, H in _default_suite(args.seed)
                 for method in ("brute", "slow", "fast")]
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                rows = list(pool.map(_bench_decision_row, tasks))
        else:
            rows = [_bench_decision_row(t) for t in tasks]
    rows.sort(key=lambda r: (r[0], r[3]))
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(BENCH_COLUMNS)
    for name, n, k, method, elapsed, nodes, verdict in rows:
        shown = 0.0 if args.deterministic else elapsed
        writer.writerow([name, n, k, method, f"{shown:.6f}", nodes, verdict])
    text = buffer.getvalue()
    if args.out is None or args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)
    return 0


# -- entry point ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypermatch",
        description="Perfect-matching decisions for dense uniform hypergraphs")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write an instance file")
    gen.add_argument("kind", choices=GENERATOR_KINDS)
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--k", type=int, default=3)
    gen.add_argument("--x", type=int, default=0,
                     help="distinguished-set size for parity kinds")
    gen.add_argument("--s", type=int, default=1,
                     help="blocking-set size for the space kind")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--codegree", type=int, default=None,
                     help="target minimum codegree for the random kind")
    gen.add_argument("--out", default=None)
    gen.set_defaults(func=cmd_generate)

    dec = sub.add_parser("decide", help="decide perfect matchability")
    dec.add_argument("file", help="instance file, or - for stdin")
    dec.add_argument("--method", choices=("brute", "slow", "fast", "all"),
                     default="fast")
    dec.add_argument("--out", default=None)
    _add_config_flags(dec)
    dec.set_defaults(func=cmd_decide)

    ana = sub.add_parser("analyze", help="report the partition pipeline result")
    ana.add_argument("file", help="instance file, or - for stdin")
    ana.add_argument("--out", default=None)
    _add_config_flags(ana)
    ana.set_defaults(func=cmd_analyze)

    ben = sub.add_parser("bench", help="time the deciders or the kernels")
    ben.add_argument("--suite", choices=("default", "kernels"),
                     default="default")
    ben.add_argument("--out", default=None)
    _add_config_flags(ben)
    ben.set_defaults(func=cmd_bench)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        error = {"schema": SCHEMA, "error": {"kind": type(exc).__name__,
                                             "message": str(exc)}}
        sys.stderr.write(json.dumps(error, sort_keys=True) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
