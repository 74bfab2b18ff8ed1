"""Type-based dynamic program over nice tree decompositions.

Subsets of a bag are stored as vertex bitmasks and families of subsets as
frozensets of masks.  For a node v with bag X and a partial solution
D inside the subtree graph G_v, a type records

* ``t_bag``: D ∩ X,
* ``t_int``: the close sets in X of the members of D,
* ``t_ext``: the close sets in X of the solution vertices outside G_v (a guess
  made bottom-up and confirmed at the root, where it must be empty),
* ``t_cov``: the bag vertices already lying on a shortest path between a
  member of D and a member of D or an outside solution vertex.

Vertices of G_v outside X must be covered by the time they are forgotten.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

from .decomposition import FORGET, INTRODUCE, JOIN, LEAF, NiceTreeDecomposition, build_nice_tree_decomposition, interval_path_decomposition
from .exact import SolveBudget, SolveResult
from .graph import Graph, GraphError, bfs_distances, is_connected
from .intervals import _as_interval, intersection_graph, interval_family_A

DEFAULT_CHORDAL_CAP = 3
DEFAULT_INTERVAL_CAP = 8


class CapExceeded(GraphError):
    pass


class DPBudgetExhausted(RuntimeError):
    pass


@dataclass(frozen=True)
class TypeTuple:
    scope: int
    t_int: frozenset[int]
    t_ext: frozenset[int]
    t_cov: int
    t_bag: int

    def describe(self) -> dict:
        """Readable form with vertex ids instead of masks."""
        return {
            "bag": _members(self.scope),
            "int": sorted(_members(a) for a in self.t_int),
            "ext": sorted(_members(a) for a in self.t_ext),
            "cov": _members(self.t_cov),
            "sol": _members(self.t_bag),
        }


EMPTY_TYPE = TypeTuple(0, frozenset(), frozenset(), 0, 0)


def _members(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def _rule(a: int, b: int) -> int:
    """Bag vertices on shortest paths between vertices close to a and to b."""
    both = a & b
    return both if both else a | b


def _subsets(mask: int) -> list[int]:
    """Nonempty submasks of ``mask``."""
    out = []
    sub = mask
    while sub:
        out.append(sub)
        sub = (sub - 1) & mask
    return sorted(out)


# -- validity ---------------------------------------------------------------


def forced_cov(t_int: Iterable[int], t_ext: Iterable[int]) -> int:
    cov = 0
    t_ext = list(t_ext)
    for a in t_int:
        for b in t_ext:
            cov |= _rule(a, b)
    return cov


def is_valid_type(tau: TypeTuple, family: Iterable[int] | None = None) -> bool:
    X = tau.scope
    if 0 in tau.t_int or 0 in tau.t_ext:
        return False
    if any(a & ~X for a in tau.t_int | tau.t_ext) or tau.t_bag & ~X or tau.t_cov & ~X:
        return False
    if family is not None:
        fam = frozenset(family)
        if not (tau.t_int <= fam and tau.t_ext <= fam):
            return False
    for u in _members(tau.t_bag):
        if (1 << u) not in tau.t_int:
            return False
    need = forced_cov(tau.t_int, tau.t_ext)
    return need & ~tau.t_cov == 0


def enumerate_valid_types(bag: Iterable[int], mode: str = "chordal", family=None,
                          cap: int | None = None) -> Iterator[TypeTuple]:
    """Every type over ``bag`` satisfying the validity conditions.

    This is the raw (non reachability-driven) space, intended for small bags.
    """
    bag = sorted(set(bag))
    if mode not in ("chordal", "interval"):
        raise ValueError(f"unknown mode {mode}")
    if cap is None:
        cap = DEFAULT_CHORDAL_CAP if mode == "chordal" else DEFAULT_INTERVAL_CAP
    if len(bag) > cap:
        raise CapExceeded(f"bag of size {len(bag)} exceeds cap {cap}")
    X = _mask(bag)
    if mode == "interval":
        if family is None:
            raise ValueError("interval mode needs the family")
        index = sorted(_mask(a) for a in family if a)
    else:
        index = _subsets(X)
    families = [frozenset(c) for r in range(len(index) + 1) for c in combinations(index, r)]
    for t_bag in [0] + _subsets(X):
        singles = frozenset(1 << u for u in _members(t_bag))
        for t_int in families:
            if not singles <= t_int:
                continue
            for t_ext in families:
                need = forced_cov(t_int, t_ext)
                free = X & ~need
                for extra in [0] + _subsets(free):
                    yield TypeTuple(X, t_int, t_ext, need | extra, t_bag)


# -- compatibility ------------------------------------------------------------


def _project(a: int, gone: int, rest: int) -> int:
    """Close set w.r.t. ``rest`` of a vertex close to ``a`` w.r.t. ``rest | gone``."""
    left = a & ~gone
    return left if left else rest


def compatible_introduce(tau: TypeTuple, tau1: TypeTuple, x: int) -> bool:
    """Parent τ over X_u + x, child τ1 over X_u."""
    xb = 1 << x
    if not tau.scope & xb or tau1.scope != tau.scope & ~xb:
        raise GraphError("bag mismatch for introduce")
    xu = tau1.scope
    x_in = bool(tau.t_bag & xb)
    if tau1.t_bag != tau.t_bag & ~xb:
        return False
    if tau.t_int != tau1.t_int | ({xb} if x_in else set()):
        return False
    expected = {_project(b, xb, xu) for b in tau.t_ext}
    if x_in:
        expected.add(xu)
    expected.discard(0)
    if tau1.t_ext != expected:
        return False
    gained = 0
    if x_in:
        for b in tau.t_ext:
            if not b & xb:
                gained |= b
    if tau.t_cov & xu != tau1.t_cov | gained:
        return False
    x_cov = x_in or any(b & xb and not a & b for a in tau1.t_int for b in tau.t_ext)
    return bool(tau.t_cov & xb) == x_cov


def compatible_forget(tau: TypeTuple, tau1: TypeTuple, x: int) -> bool:
    """Parent τ over X_u − x, child τ1 over X_u."""
    xb = 1 << x
    if not tau1.scope & xb or tau.scope != tau1.scope & ~xb:
        raise GraphError("bag mismatch for forget")
    xv = tau.scope
    if tau.t_bag != tau1.t_bag & ~xb:
        return False
    if tau1.t_ext != tau.t_ext:
        return False
    if tau.t_int != {p for p in (_project(a, xb, xv) for a in tau1.t_int) if p}:
        return False
    return tau1.t_cov == tau.t_cov | xb


def cov_join(int1: Iterable[int], int2: Iterable[int]) -> int:
    return forced_cov(int1, int2)


def compatible_join(tau: TypeTuple, tau1: TypeTuple, tau2: TypeTuple) -> bool:
    if not tau.scope == tau1.scope == tau2.scope:
        raise GraphError("bag mismatch for join")
    if not tau.t_bag == tau1.t_bag == tau2.t_bag:
        return False
    if tau1.t_ext != tau.t_ext | tau2.t_int or tau2.t_ext != tau.t_ext | tau1.t_int:
        return False
    if tau.t_int != tau1.t_int | tau2.t_int:
        return False
    return tau.t_cov == tau1.t_cov | tau2.t_cov | cov_join(tau1.t_int, tau2.t_int)


def compatible_root(tau1: TypeTuple, x: int) -> bool:
    xb = 1 << x
    if tau1.scope != xb:
        raise GraphError("root child bag must be the singleton of x")
    return bool(tau1.t_bag & xb) and not tau1.t_ext and bool(tau1.t_cov & xb)


# -- forward generation -------------------------------------------------------


def introduce_parents(tau1: TypeTuple, x: int, family: frozenset[int] | None = None) -> Iterator[TypeTuple]:
    """All parent types compatible with ``tau1`` at an introduce node."""
    xb = 1 << x
    xu = tau1.scope
    xv = xu | xb

    def allowed(b: int) -> bool:
        return family is None or b in family

    for x_in in (False, True):
        if x_in and xu and xu not in tau1.t_ext:
            continue
        groups = []
        for a in sorted(tau1.t_ext):
            pre = [b for b in (a, a | xb) if allowed(b)]
            if a == xu:
                pre += [b for b in (xb,) if allowed(b)]
            optional = x_in and a == xu
            choices = [frozenset(c) for r in range(0 if optional else 1, len(pre) + 1)
                       for c in combinations(pre, r)]
            if not choices:
                break
            groups.append(choices)
        else:
            if not xu and allowed(xb):
                groups.append([frozenset(), frozenset([xb])])
            t_int = tau1.t_int | {xb} if x_in else tau1.t_int
            t_bag = tau1.t_bag | xb if x_in else tau1.t_bag
            for picks in product(*groups):
                t_ext = frozenset().union(*picks)
                cov = tau1.t_cov
                if x_in:
                    cov |= xb
                    for b in t_ext:
                        if not b & xb:
                            cov |= b
                elif any(b & xb and not a & b for a in tau1.t_int for b in t_ext):
                    cov |= xb
                yield TypeTuple(xv, t_int, t_ext, cov, t_bag)


def forget_parent(tau1: TypeTuple, x: int) -> TypeTuple | None:
    xb = 1 << x
    if not tau1.t_cov & xb or any(b & xb for b in tau1.t_ext):
        return None
    xv = tau1.scope & ~xb
    t_int = frozenset(p for p in (_project(a, xb, xv) for a in tau1.t_int) if p)
    return TypeTuple(xv, t_int, tau1.t_ext, tau1.t_cov & ~xb, tau1.t_bag & ~xb)


def join_parents(tau1: TypeTuple, tau2: TypeTuple) -> Iterator[TypeTuple]:
    if tau1.t_bag != tau2.t_bag:
        return
    e1, e2, i1, i2 = tau1.t_ext, tau2.t_ext, tau1.t_int, tau2.t_int
    if not (i2 <= e1 and i1 <= e2):
        return
    lower = (e1 - i2) | (e2 - i1)
    if not lower <= (e1 & e2):
        return
    optional = sorted((i1 & i2) - lower)
    t_int = i1 | i2
    cov = tau1.t_cov | tau2.t_cov | cov_join(i1, i2)
    for r in range(len(optional) + 1):
        for extra in combinations(optional, r):
            yield TypeTuple(tau1.scope, t_int, lower | frozenset(extra), cov, tau1.t_bag)


# -- the dynamic program --------------------------------------------------------


def _better(a: tuple[int, int], b: tuple[int, int]) -> bool:
    """Smaller size first, then lexicographically smaller vertex set."""
    if a[0] != b[0]:
        return a[0] < b[0]
    diff = a[1] ^ b[1]
    return bool(a[1] & diff & -diff)


def _offer(table: dict, tau: TypeTuple, entry: tuple[int, int]) -> None:
    old = table.get(tau)
    if old is None or _better(entry, old):
        table[tau] = entry


def run_dp(td: NiceTreeDecomposition, families: dict[int, frozenset[int]] | None = None,
           budget: SolveBudget | None = None, keep: bool = False) -> list[dict | None]:
    """Fill the per-node tables bottom-up; returns them indexed by node id.

    Child tables are released once consumed unless ``keep`` is set.
    """
    budget = budget or SolveBudget()
    start = time.perf_counter()
    tables: list[dict | None] = [None] * len(td.nodes)
    steps = 0

    def check():
        nonlocal steps
        steps += 1
        if budget.max_candidates is not None and steps > budget.max_candidates:
            raise DPBudgetExhausted("state budget exhausted")
        if budget.time_limit is not None and steps % 512 == 0:
            if time.perf_counter() - start > budget.time_limit:
                raise DPBudgetExhausted("time budget exhausted")

    for v in td.postorder():
        node = td.nodes[v]
        table: dict[TypeTuple, tuple[int, int]] = {}
        if node.kind == LEAF:
            table[EMPTY_TYPE] = (0, 0)
        elif node.kind == INTRODUCE:
            x = node.vertex
            xb = 1 << x
            fam = families.get(v) if families is not None else None
            for tau1, (size, cert) in tables[node.children[0]].items():
                for tau in introduce_parents(tau1, x, fam):
                    check()
                    if tau.t_bag & xb:
                        _offer(table, tau, (size + 1, cert | xb))
                    else:
                        _offer(table, tau, (size, cert))
        elif node.kind == FORGET:
            x = node.vertex
            child = tables[node.children[0]]
            if v == td.root:
                for tau1, entry in child.items():
                    check()
                    if compatible_root(tau1, x):
                        _offer(table, EMPTY_TYPE, entry)
            else:
                fam = families.get(v) if families is not None else None
                for tau1, entry in child.items():
                    check()
                    tau = forget_parent(tau1, x)
                    if tau is not None and (fam is None or tau.t_ext <= fam):
                        _offer(table, tau, entry)
        elif node.kind == JOIN:
            left, right = (tables[c] for c in node.children)
            by_bag: dict[int, list] = {}
            for tau2, entry2 in right.items():
                by_bag.setdefault(tau2.t_bag, []).append((tau2, entry2))
            for tau1, (s1, c1) in left.items():
                for tau2, (s2, c2) in by_bag.get(tau1.t_bag, ()):
                    check()
                    merged = c1 | c2
                    entry = (merged.bit_count(), merged)
                    for tau in join_parents(tau1, tau2):
                        _offer(table, tau, entry)
        else:
            raise GraphError(f"unknown node kind {node.kind}")
        if not keep:
            for c in node.children:
                tables[c] = None
        tables[v] = table
    return tables


def _solve(td: NiceTreeDecomposition, method: str, families, budget, keep: bool = False):
    start = time.perf_counter()
    tables = run_dp(td, families, budget, keep)
    root = tables[td.root]
    if EMPTY_TYPE not in root:
        raise AssertionError("no solution reached the root")
    size, cert = root[EMPTY_TYPE]
    states = sum(len(t) for t in tables if t is not None)
    result = SolveResult(frozenset(_members(cert)), size, True, method, time.perf_counter() - start,
                         stats={"root_states": len(root), "states": states})
    return result, tables


def _check_cap(td: NiceTreeDecomposition, cap: int) -> None:
    if td.width > cap:
        raise CapExceeded(f"clique number {td.width} exceeds cap {cap}")


def dp_min_geodetic_chordal(g: Graph, budget: SolveBudget | None = None, omega_cap: int = DEFAULT_CHORDAL_CAP,
                            keep_tables: bool = False):
    """Minimum geodetic set of a connected chordal graph.

    Returns a SolveResult, or ``(result, decomposition, tables)`` when
    ``keep_tables`` is set.
    """
    if not is_connected(g):
        raise GraphError("graph is disconnected")
    if g.n == 1:
        return SolveResult(frozenset([0]), 1, True, "chordal", 0.0)
    td = build_nice_tree_decomposition(g)
    _check_cap(td, omega_cap)
    result, tables = _solve(td, "chordal", None, budget, keep_tables)
    return (result, td, tables) if keep_tables else result


def interval_families(td: NiceTreeDecomposition, rep: Sequence) -> dict[int, frozenset[int]]:
    cache: dict[frozenset[int], frozenset[int]] = {}
    out = {}
    for i, node in enumerate(td.nodes):
        if node.bag not in cache:
            cache[node.bag] = frozenset(_mask(a) for a in interval_family_A(node.bag, rep)) if node.bag else frozenset()
        out[i] = cache[node.bag]
    return out


def dp_min_geodetic_interval(rep: Sequence, budget: SolveBudget | None = None, omega_cap: int = DEFAULT_INTERVAL_CAP,
                             keep_tables: bool = False):
    """Same DP on a path decomposition, with close sets restricted to the interval family."""
    rep = [_as_interval(iv) for iv in rep]
    g = intersection_graph(rep)
    if not is_connected(g) or g.n == 0:
        raise GraphError("interval graph must be connected and nonempty")
    if g.n == 1:
        return SolveResult(frozenset([0]), 1, True, "interval", 0.0)
    td = interval_path_decomposition(rep)
    _check_cap(td, omega_cap)
    families = interval_families(td, rep)
    result, tables = _solve(td, "interval", families, budget, keep_tables)
    return (result, td, tables) if keep_tables else result


# -- debug certificate checker ------------------------------------------------------


def _subtree_vertices(td: NiceTreeDecomposition) -> list[int]:
    below = [0] * len(td.nodes)
    for v in td.postorder():
        node = td.nodes[v]
        mask = _mask(node.bag)
        for c in node.children:
            mask |= below[c]
        below[v] = mask
    return below


def _aux_distances(g: Graph, inside: int, ext: Sequence[int], sources: Iterable[int]) -> dict[int, dict[int, int]]:
    """BFS in G_v plus one extra vertex per ext set (ids n, n+1, ...)."""
    extra_adj: dict[int, list[int]] = {g.n + i: _members(b) for i, b in enumerate(ext)}
    back: dict[int, list[int]] = {}
    for s, members in extra_adj.items():
        for w in members:
            back.setdefault(w, []).append(s)
    out = {}
    for s in sources:
        dist = {s: 0}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            nbrs = extra_adj[u] if u >= g.n else [w for w in g.neighbors(u) if inside >> w & 1] + back.get(u, [])
            for w in nbrs:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        out[s] = dist
    return out


def check_certificates(g: Graph, td: NiceTreeDecomposition, tables: Sequence[dict]) -> list[str]:
    """Verify every stored certificate against its type on the auxiliary graph.

    Returns a list of problems; empty when all entries are sound.
    """
    problems = []
    below = _subtree_vertices(td)
    global_rows = {v: bfs_distances(g, v) for v in range(g.n)}
    for v, table in enumerate(tables):
        if table is None:
            continue
        X = _mask(td.nodes[v].bag)
        inside = below[v]
        members_x = _members(X)
        for tau, (size, cert) in table.items():
            D = _members(cert)
            tag = f"node {v} type {tau.describe()}"
            if cert & ~inside or cert & X != tau.t_bag or len(D) != size:
                problems.append(f"{tag}: certificate shape")
                continue
            ext = sorted(tau.t_ext)
            dist = _aux_distances(g, inside, ext, D + [g.n + i for i in range(len(ext))])
            if X:
                closes = set()
                for d in D:
                    local = [dist[d].get(x) for x in members_x]
                    glob = [global_rows[d][x] for x in members_x]
                    assert local == glob, "subtree distance differs from global distance"
                    base = min(glob)
                    closes.add(_mask(x for x, dx in zip(members_x, glob) if dx == base))
                if closes != set(tau.t_int):
                    problems.append(f"{tag}: int mismatch {sorted(closes)}")
            elif tau.t_int:
                problems.append(f"{tag}: int nonempty on empty bag")
            covered = 0
            partners = D + [g.n + i for i in range(len(ext))]
            for d in D:
                for z in partners:
                    total = dist[d].get(z)
                    if total is None:
                        continue
                    for w in _members(inside):
                        a, b = dist[d].get(w), dist[z].get(w)
                        if a is not None and b is not None and a + b == total:
                            covered |= 1 << w
            need = (inside & ~X) | tau.t_cov
            if need & ~covered:
                problems.append(f"{tag}: uncovered {_members(need & ~covered)}")
            if covered & X != tau.t_cov:
                problems.append(f"{tag}: cov not exact {_members(covered & X)}")
    return problems
