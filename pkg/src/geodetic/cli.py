"""Command line: solve, check, generate and bench.

Exit codes: 0 success, 2 unreadable input or bad parameters, 3 a method's
precondition does not hold, 4 budget exhausted (best set found is still
printed), 1 cross-method disagreement in ``bench``.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .exact import SolveBudget, SolveResult, certify, greedy_geodetic, min_geodetic_blocks, min_geodetic_bruteforce
from .fpt import DEFAULT_CHORDAL_CAP, DEFAULT_INTERVAL_CAP, CapExceeded, DPBudgetExhausted, dp_min_geodetic_chordal, dp_min_geodetic_interval
from .graph import GraphError, chordality_and_peo, is_connected
from .io import Instance, ParseError, ResultDocument, dump_json, format_graph, format_intervals, read_instance, read_sidecar, sidecar_path
from .metric import is_edge_geodetic, is_geodetic
from .solid_grid import GridError, solve_solid_grid, validate_solid_grid

log = logging.getLogger("geodetic")

EXIT_OK, EXIT_DISAGREE, EXIT_PARSE, EXIT_PRECONDITION, EXIT_BUDGET = 0, 1, 2, 3, 4
METHODS = ("auto", "brute", "blocks", "solid-grid", "chordal", "interval")
EXACT_METHODS = ("brute", "blocks", "solid-grid", "chordal", "interval")
KINDS = ("sat2interval", "vc2grid", "random-chordal", "random-interval", "random-solid-grid")


class Precondition(Exception):
    pass


class BudgetOut(Exception):
    def __init__(self, result: SolveResult):
        super().__init__("budget exhausted")
        self.result = result


def _is_solid_grid(inst: Instance) -> bool:
    try:
        return validate_solid_grid(inst.graph, inst.coords)
    except GridError as exc:
        log.info("coordinates ignored: %s", exc)
        return False


def _budget(ms: int | None) -> SolveBudget | None:
    return SolveBudget(time_limit=ms / 1000) if ms else None


def solve_instance(inst: Instance, method: str, budget_ms: int | None = None,
                   omega_cap: int | None = None) -> SolveResult:
    """Dispatch to one solver; raises Precondition or BudgetOut."""
    g = inst.graph
    if g.n == 0 or not is_connected(g):
        raise Precondition("graph must be connected and nonempty")
    budget = _budget(budget_ms)
    if method == "auto":
        if inst.coords is not None and _is_solid_grid(inst):
            method = "solid-grid"
        elif chordality_and_peo(g)[0]:
            try:
                return solve_instance(inst, "chordal", budget_ms, omega_cap)
            except Precondition as exc:
                log.info("chordal DP skipped: %s", exc)
                method = "blocks"
        else:
            method = "blocks"
    try:
        if method == "brute":
            res = min_geodetic_bruteforce(g, budget)
        elif method == "blocks":
            res = min_geodetic_blocks(g, budget)
        elif method == "solid-grid":
            if inst.coords is None:
                raise Precondition("solid-grid needs 'v' coordinate lines")
            res = solve_solid_grid(g, inst.coords)
        elif method == "chordal":
            cap = omega_cap or DEFAULT_CHORDAL_CAP
            if not chordality_and_peo(g)[0]:
                raise Precondition("graph is not chordal")
            res = dp_min_geodetic_chordal(g, budget, omega_cap=cap)
        elif method == "interval":
            if inst.intervals is None:
                raise Precondition("interval method needs 'i' interval lines")
            res = dp_min_geodetic_interval(inst.intervals, budget, omega_cap=omega_cap or DEFAULT_INTERVAL_CAP)
        else:
            raise Precondition(f"unknown method {method}")
    except CapExceeded as exc:
        raise Precondition(str(exc)) from exc
    except DPBudgetExhausted as exc:
        raise BudgetOut(greedy_geodetic(g)) from exc
    except GridError as exc:
        raise Precondition(str(exc)) from exc
    if not res.optimal:
        raise BudgetOut(res)
    return res


def _document(res: SolveResult, stats: dict | None) -> ResultDocument:
    return ResultDocument(res.method, res.size, sorted(res.vertices), res.optimal, res.lower_bound,
                          round(res.elapsed * 1000, 3), stats)


def _instance_stats(path: str) -> dict | None:
    meta = read_sidecar(path)
    if not meta:
        return None
    keys = ("tracks", "point_intervals", "expected_bound")
    stats = {k: meta[k] for k in keys if k in meta}
    return stats or None


def cmd_solve(args) -> int:
    inst = read_instance(args.input)
    stats = _instance_stats(args.input)
    try:
        res = solve_instance(inst, args.method, args.budget_ms, args.omega_cap)
    except Precondition as exc:
        log.error("%s", exc)
        return EXIT_PRECONDITION
    except BudgetOut as out:
        log.warning("budget exhausted; emitting the best set found")
        sys.stdout.write(_document(out.result, stats).to_json())
        return EXIT_BUDGET
    sys.stdout.write(_document(res, stats).to_json())
    return EXIT_OK


def _parse_set(text: str) -> list[int]:
    try:
        return sorted({int(t) for t in text.replace(",", " ").split()})
    except ValueError as exc:
        raise ParseError(f"bad vertex list {text!r}") from exc


def cmd_check(args) -> int:
    inst = read_instance(args.input)
    g = inst.graph
    S = _parse_set(args.set)
    if any(not 0 <= v < g.n for v in S):
        log.error("vertex id out of range 0..%d", g.n - 1)
        return EXIT_PRECONDITION
    if not is_connected(g):
        log.error("graph is disconnected")
        return EXIT_PRECONDITION
    start = time.perf_counter()
    verdicts = {"geodetic": bool(S) and is_geodetic(g, S)}
    if args.edge_geodetic:
        verdicts["edge_geodetic"] = bool(S) and is_edge_geodetic(g, S)
    optimal = None
    if args.certify:
        rep = certify(g, S, claimed_optimal=True, budget=_budget(args.budget_ms))
        optimal = rep.optimal
        verdicts["minimum"] = rep.minimum
    doc = ResultDocument("check", len(S), S, optimal, None, round((time.perf_counter() - start) * 1000, 3),
                         None, verdicts)
    sys.stdout.write(doc.to_json())
    return EXIT_OK


def _write(out: str | None, text: str) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def cmd_generate(args) -> int:
    from . import generators
    from .reductions.sat_interval import parse_dimacs, sat_to_intervals
    from .reductions.vc_grid import PRESETS, vc_to_partial_grid

    kind = args.kind
    if kind.startswith("random") and args.seed is None:
        raise ParseError("--seed is required for random kinds")
    try:
        if kind == "sat2interval":
            if not args.cnf:
                raise ParseError("--cnf is required for sat2interval")
            inst = sat_to_intervals(parse_dimacs(Path(args.cnf).read_text()))
            _write(args.out, format_intervals(inst.rep))
            if args.out:
                sidecar_path(args.out).write_text(dump_json(inst.metadata()))
        elif kind == "vc2grid":
            if args.preset not in PRESETS:
                raise ParseError(f"unknown preset {args.preset!r}; choose from {sorted(PRESETS)}")
            f1 = vc_to_partial_grid(PRESETS[args.preset]())
            _write(args.out, format_graph(f1.graph))
            if args.out:
                meta = {"labels": list(f1.labels), "preset": args.preset,
                        "rotation": [list(r) for r in f1.source.rotation]}
                sidecar_path(args.out).write_text(dump_json(meta))
        elif kind == "random-chordal":
            g = generators.random_chordal(args.n, args.omega, args.seed, leaves=args.leaves)
            _write(args.out, format_graph(g))
        elif kind == "random-interval":
            rep = generators.random_interval(args.n, args.seed, span=args.span, max_len=args.max_len)
            _write(args.out, format_intervals(rep))
        elif kind == "random-solid-grid":
            g, coords = generators.random_solid_grid(args.max_vertices, args.seed)
            _write(args.out, format_graph(g, coords))
        else:
            raise ParseError(f"unknown kind {kind}")
    except (GraphError, OSError) as exc:
        raise ParseError(str(exc)) from exc
    return EXIT_OK


def _bench_one(job):
    path, methods, reps, budget_ms, cap = job
    inst = read_instance(path)
    rows = []
    for method in methods:
        best, size, status = None, None, "ok"
        for _ in range(reps):
            try:
                res = solve_instance(inst, method, budget_ms, cap)
            except Precondition:
                status = "skip"
                break
            except BudgetOut as out:
                res, status = out.result, "budget"
            size = res.size
            ms = res.elapsed * 1000
            best = ms if best is None else min(best, ms)
        rows.append((Path(path).name, method, size, status, best))
    return rows


def cmd_bench(args) -> int:
    corpus = Path(args.corpus)
    if not corpus.is_dir():
        raise ParseError(f"{corpus} is not a directory")
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    bad = [m for m in methods if m not in EXACT_METHODS]
    if bad:
        raise ParseError(f"unknown methods {bad}")
    files = sorted(p for p in corpus.iterdir() if p.is_file() and not p.name.endswith(".json"))
    jobs = [(str(p), methods, args.repetitions, args.budget_ms, args.omega_cap) for p in files]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_bench_one, jobs))
    else:
        results = [_bench_one(j) for j in jobs]
    # single writer, rows ordered by instance name
    out = sys.stdout
    out.write("instance\tmethod\tsize\tstatus\tbest_ms\n")
    disagreements = 0
    for rows in results:
        sizes = {r[2] for r in rows if r[3] == "ok"}
        for name, method, size, status, ms in rows:
            ms_text = "-" if ms is None else f"{ms:.3f}"
            out.write(f"{name}\t{method}\t{'-' if size is None else size}\t{status}\t{ms_text}\n")
        if len(sizes) > 1:
            disagreements += 1
            log.error("size disagreement on %s: %s", rows[0][0], sorted(sizes))
    return EXIT_DISAGREE if disagreements else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="geodetic", description="Minimum geodetic set solvers and generators.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to standard error")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve one instance")
    s.add_argument("input")
    s.add_argument("--method", choices=METHODS, default="auto")
    s.add_argument("--budget-ms", type=int, default=None)
    s.add_argument("--omega-cap", type=int, default=None)
    s.set_defaults(func=cmd_solve)

    c = sub.add_parser("check", help="verify a vertex set")
    c.add_argument("input")
    c.add_argument("--set", required=True, help="comma separated vertex ids")
    c.add_argument("--edge-geodetic", action="store_true")
    c.add_argument("--certify", action="store_true", help="also decide whether the set is minimum")
    c.add_argument("--budget-ms", type=int, default=None)
    c.set_defaults(func=cmd_check)

    gen = sub.add_parser("generate", help="write an instance")
    gen.add_argument("kind", choices=KINDS)
    gen.add_argument("--seed", type=int, default=None)
    gen.add_argument("--out", default=None, help="output path; sidecars go to OUT.json")
    gen.add_argument("--cnf", default=None, help="DIMACS file for sat2interval")
    gen.add_argument("--preset", default="K4", help="rotation preset for vc2grid")
    gen.add_argument("--n", type=int, default=12)
    gen.add_argument("--omega", type=int, default=3)
    gen.add_argument("--leaves", type=int, default=0)
    gen.add_argument("--span", type=int, default=30)
    gen.add_argument("--max-len", type=int, default=5)
    gen.add_argument("--max-vertices", type=int, default=22)
    gen.set_defaults(func=cmd_generate)

    b = sub.add_parser("bench", help="run methods over a corpus directory")
    b.add_argument("corpus")
    b.add_argument("--methods", default="brute,blocks")
    b.add_argument("--repetitions", type=int, default=1)
    b.add_argument("--budget-ms", type=int, default=None)
    b.add_argument("--omega-cap", type=int, default=None)
    b.add_argument("--jobs", type=int, default=1)
    b.set_defaults(func=cmd_bench)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(message)s"))
    log.handlers = [handler]
    log.propagate = False
    log.setLevel(logging.INFO if args.verbose else logging.WARNING)
    for name in ("budget_ms", "omega_cap", "repetitions", "jobs"):
        val = getattr(args, name, None)
        if val is not None and val <= 0:
            log.error("--%s must be positive", name.replace("_", "-"))
            return EXIT_PARSE
    try:
        return args.func(args)
    except ParseError as exc:
        log.error("%s", exc)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
