"""Exact minimum geodetic sets for small graphs.

The brute-force search is the reference oracle for every specialised solver
in the package.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .graph import Graph, block_decomposition, is_connected, simplicial_vertices
from .metric import MetricError, is_geodetic, pair_interval_masks


@dataclass(frozen=True)
class SolveBudget:
    """Search limits; ``None`` means unlimited."""

    max_candidates: int | None = None
    time_limit: float | None = None

    def __post_init__(self):
        if self.max_candidates is not None and self.max_candidates <= 0:
            raise ValueError("max_candidates must be positive")
        if self.time_limit is not None and self.time_limit <= 0:
            raise ValueError("time_limit must be positive")


@dataclass(frozen=True)
class SolveResult:
    vertices: frozenset[int]
    size: int
    optimal: bool
    method: str
    elapsed: float
    lower_bound: int | None = None
    stats: dict = field(default_factory=dict, compare=False)


class BudgetExhausted(Exception):
    pass


class _Meter:
    def __init__(self, budget: SolveBudget | None, start: float | None = None):
        self.budget = budget or SolveBudget()
        self.start = time.perf_counter() if start is None else start
        self.count = 0

    def tick(self) -> None:
        self.count += 1
        b = self.budget
        if b.max_candidates is not None and self.count > b.max_candidates:
            raise BudgetExhausted
        if b.time_limit is not None and self.count % 256 == 0:
            if time.perf_counter() - self.start > b.time_limit:
                raise BudgetExhausted

    def elapsed(self) -> float:
        return time.perf_counter() - self.start


def _greedy(pm: Sequence[Sequence[int]], full: int, fixed: list[int], candidates: list[int]) -> list[int]:
    """Add the vertex with the largest coverage gain until everything is covered."""
    chosen = list(fixed)
    covered = 0
    for i, a in enumerate(chosen):
        for b in chosen[i:]:
            covered |= pm[a][b]
    pool = [c for c in candidates if c not in set(chosen)]
    while covered != full and pool:
        best, best_gain = None, -1
        for c in pool:
            gain = pm[c][c]
            for a in chosen:
                gain |= pm[c][a]
            gain = (gain & ~covered).bit_count()
            if gain > best_gain:
                best, best_gain = c, gain
        chosen.append(best)
        pool.remove(best)
        for a in chosen:
            covered |= pm[best][a]
    return [c for c in chosen if c not in set(fixed)] if covered == full else list(candidates)


def _search(pm, full: int, fixed: list[int], candidates: list[int], meter: _Meter) -> list[int]:
    """Smallest lexicographically-first subset C of candidates with fixed + C geodetic."""
    base = 0
    for i, a in enumerate(fixed):
        for b in fixed[i:]:
            base |= pm[a][b]
    if base == full:
        return []
    with_fixed = {}
    for c in candidates:
        mask = pm[c][c]
        for a in fixed:
            mask |= pm[c][a]
        with_fixed[c] = mask
    for k in range(1, len(candidates) + 1):
        for combo in combinations(candidates, k):
            meter.tick()
            cov = base
            for i, c in enumerate(combo):
                cov |= with_fixed[c]
                row = pm[c]
                for d in combo[i + 1:]:
                    cov |= row[d]
            if cov == full:
                return list(combo)
    raise AssertionError("the whole vertex set is always geodetic")


def _require_connected(g: Graph) -> None:
    if not is_connected(g):
        raise MetricError("graph is disconnected")


def min_geodetic_bruteforce(g: Graph, budget: SolveBudget | None = None) -> SolveResult:
    """Size-incremental subset search over supersets of the simplicial vertices."""
    _require_connected(g)
    meter = _Meter(budget)
    if g.n == 0:
        return SolveResult(frozenset(), 0, True, "brute", meter.elapsed())
    mandatory = sorted(simplicial_vertices(g))
    rest = [v for v in range(g.n) if v not in set(mandatory)]
    pm = pair_interval_masks(g)
    full = (1 << g.n) - 1
    try:
        extra = _search(pm, full, mandatory, rest, meter)
    except BudgetExhausted:
        best = mandatory + _greedy(pm, full, mandatory, rest)
        return SolveResult(frozenset(best), len(best), False, "brute", meter.elapsed(),
                           stats={"candidates": meter.count})
    chosen = frozenset(mandatory + extra)
    return SolveResult(chosen, len(chosen), True, "brute", meter.elapsed(), stats={"candidates": meter.count})


def min_geodetic_blocks(g: Graph, budget: SolveBudget | None = None) -> SolveResult:
    """Solve each biconnected component with its cut vertices forced in."""
    _require_connected(g)
    meter = _Meter(budget)
    if g.n == 0:
        return SolveResult(frozenset(), 0, True, "blocks", meter.elapsed())
    bd = block_decomposition(g)
    simplicial = simplicial_vertices(g)
    chosen: set[int] = set()
    optimal = True
    for block in bd.blocks:
        sub, old = g.induced_subgraph(block)
        local = {v: i for i, v in enumerate(old)}
        cuts = [local[v] for v in old if v in bd.cut_vertices]
        forced = [local[v] for v in old if v in simplicial and v not in bd.cut_vertices]
        free = [i for i, v in enumerate(old) if v not in bd.cut_vertices and v not in simplicial]
        pm = pair_interval_masks(sub)
        full = (1 << sub.n) - 1
        fixed = sorted(cuts + forced)
        try:
            extra = _search(pm, full, fixed, free, meter)
        except BudgetExhausted:
            optimal = False
            extra = _greedy(pm, full, fixed, free)
        chosen.update(old[i] for i in forced + extra)
    result = frozenset(chosen)
    return SolveResult(result, len(result), optimal, "blocks", meter.elapsed(), stats={"candidates": meter.count})


def greedy_geodetic(g: Graph) -> SolveResult:
    """Simplicial vertices plus greedy coverage; a feasible, not necessarily minimum, set."""
    _require_connected(g)
    start = time.perf_counter()
    if g.n == 0:
        return SolveResult(frozenset(), 0, False, "greedy", 0.0)
    mandatory = sorted(simplicial_vertices(g))
    rest = [v for v in range(g.n) if v not in set(mandatory)]
    chosen = frozenset(mandatory + _greedy(pair_interval_masks(g), (1 << g.n) - 1, mandatory, rest))
    return SolveResult(chosen, len(chosen), False, "greedy", time.perf_counter() - start)


@dataclass(frozen=True)
class CertificateReport:
    geodetic: bool
    optimal: bool | None
    size: int
    minimum: int | None


def certify(g: Graph, S: Iterable[int], claimed_optimal: bool = False,
            budget: SolveBudget | None = None) -> CertificateReport:
    """Check a set; with ``claimed_optimal`` also search for a smaller one.

    ``optimal`` is ``None`` when not requested or when the budget ran out.
    """
    S = frozenset(S)
    try:
        geodetic = is_geodetic(g, S) if S or g.n == 0 else False
    except MetricError:
        geodetic = False
    if not (claimed_optimal and geodetic):
        return CertificateReport(geodetic, None, len(S), None)
    res = min_geodetic_bruteforce(g, budget)
    if not res.optimal:
        return CertificateReport(geodetic, None, len(S), None)
    return CertificateReport(geodetic, res.size == len(S), len(S), res.size)
