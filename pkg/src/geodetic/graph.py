"""Immutable simple graphs over dense integer ids, plus BFS and structure."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

#: Sentinel for "no path". Distances are plain ints otherwise.
UNREACHABLE = None


class GraphError(ValueError):
    """Raised for malformed graph input."""


class Graph:
    """Simple undirected graph with vertices ``0..n-1``.

    Adjacency lists are sorted tuples; the object is never mutated after
    construction, so it can be shared freely between solvers.
    """

    __slots__ = ("_n", "_adj", "_adj_sets", "_masks", "_m")

    def __init__(self, n: int, adjacency: Sequence[Sequence[int]]):
        self._n = n
        self._adj = tuple(tuple(nbrs) for nbrs in adjacency)
        self._m = sum(len(a) for a in self._adj) // 2
        self._adj_sets = None
        self._masks = None

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return self._m

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def vertices(self) -> range:
        return range(self._n)

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u < v``, sorted."""
        return [(u, v) for u in range(self._n) for v in self._adj[u] if u < v]

    def adjacency_sets(self) -> tuple[frozenset[int], ...]:
        if self._adj_sets is None:
            self._adj_sets = tuple(frozenset(a) for a in self._adj)
        return self._adj_sets

    def adjacency_masks(self) -> tuple[int, ...]:
        """Neighborhoods as Python int bitsets."""
        if self._masks is None:
            masks = []
            for nbrs in self._adj:
                mask = 0
                for w in nbrs:
                    mask |= 1 << w
                masks.append(mask)
            self._masks = tuple(masks)
        return self._masks

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency_sets()[u]

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Return the induced subgraph and the list mapping new ids to old ids."""
        old = sorted(set(vertices))
        new_id = {v: i for i, v in enumerate(old)}
        adj = [[new_id[w] for w in self._adj[v] if w in new_id] for v in old]
        return Graph(len(old), adj), old

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self._n == other._n and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self._n, self._adj))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self._m})"


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a simple graph; duplicate edges collapse, self-loops are rejected."""
    if n < 0:
        raise GraphError(f"negative vertex count {n}")
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        nbrs[u].add(v)
        nbrs[v].add(u)
    return Graph(n, [sorted(s) for s in nbrs])


def bfs_distances(g: Graph, s: int) -> list[int | None]:
    """Hop distances from ``s``; ``UNREACHABLE`` for other components."""
    if not 0 <= s < g.n:
        raise GraphError(f"vertex {s} out of range")
    dist: list[int | None] = [UNREACHABLE] * g.n
    dist[s] = 0
    queue = deque([s])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for w in g.neighbors(u):
            if dist[w] is UNREACHABLE:
                dist[w] = du
                queue.append(w)
    return dist


def connected_components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.neighbors(u):
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


class DistanceTable:
    """Precomputed BFS rows for a set of source vertices.

    Internally rows are int arrays where ``-1`` marks unreachable targets;
    :meth:`get` converts that back to ``UNREACHABLE``.
    """

    def __init__(self, sources: Sequence[int], rows: np.ndarray):
        self.sources = tuple(sources)
        self.rows = rows
        self._index = {s: i for i, s in enumerate(self.sources)}
        self.rows.setflags(write=False)

    def __contains__(self, s: int) -> bool:
        return s in self._index

    def row(self, s: int) -> np.ndarray:
        return self.rows[self._index[s]]

    def get(self, u: int, v: int) -> int | None:
        d = int(self.row(u)[v])
        return UNREACHABLE if d < 0 else d


def _csr(g: Graph) -> csr_matrix:
    indptr = np.zeros(g.n + 1, dtype=np.int64)
    for v in range(g.n):
        indptr[v + 1] = indptr[v] + g.degree(v)
    indices = np.fromiter((w for v in range(g.n) for w in g.neighbors(v)), dtype=np.int64, count=int(indptr[-1]))
    data = np.ones(len(indices), dtype=np.int8)
    return csr_matrix((data, indices, indptr), shape=(g.n, g.n))


def distance_table(g: Graph, sources: Iterable[int] | None = None) -> DistanceTable:
    """BFS rows from every source (all vertices by default)."""
    srcs = list(range(g.n)) if sources is None else sorted(set(sources))
    if not srcs or g.n == 0:
        return DistanceTable(srcs, np.zeros((len(srcs), g.n), dtype=np.int64))
    d = shortest_path(_csr(g), method="D", unweighted=True, directed=False, indices=srcs)
    d = np.atleast_2d(d)
    rows = np.where(np.isinf(d), -1, d).astype(np.int64)
    return DistanceTable(srcs, rows)


@dataclass(frozen=True)
class BlockDecomposition:
    cut_vertices: frozenset[int]
    blocks: tuple[frozenset[int], ...]


def block_decomposition(g: Graph) -> BlockDecomposition:
    """Biconnected components and cut vertices via Tarjan's lowpoint method.

    Isolated vertices form singleton blocks.
    """
    n = g.n
    disc = [-1] * n
    low = [0] * n
    cuts: set[int] = set()
    blocks: list[frozenset[int]] = []
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        if g.degree(root) == 0:
            disc[root] = timer
            timer += 1
            blocks.append(frozenset([root]))
            continue
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        edge_stack: list[tuple[int, int]] = []
        stack = [(root, -1, iter(g.neighbors(root)))]
        while stack:
            u, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    edge_stack.append((u, w))
                    disc[w] = low[w] = timer
                    timer += 1
                    if u == root:
                        root_children += 1
                    stack.append((w, u, iter(g.neighbors(w))))
                    advanced = True
                    break
                if w != parent and disc[w] < disc[u]:
                    edge_stack.append((u, w))
                    low[u] = min(low[u], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent == -1:
                continue
            low[parent] = min(low[parent], low[u])
            if low[u] >= disc[parent]:
                if parent != root:
                    cuts.add(parent)
                comp: set[int] = set()
                while True:
                    a, b = edge_stack.pop()
                    comp.add(a)
                    comp.add(b)
                    if (a, b) == (parent, u):
                        break
                blocks.append(frozenset(comp))
        if root_children > 1:
            cuts.add(root)
    blocks.sort(key=lambda b: (min(b), sorted(b)))
    return BlockDecomposition(frozenset(cuts), tuple(blocks))


def simplicial_vertices(g: Graph) -> frozenset[int]:
    """Vertices whose open neighborhood is a clique."""
    masks = g.adjacency_masks()
    out = []
    for v in range(g.n):
        nb = masks[v]
        if all((masks[w] | (1 << w)) & nb == nb for w in g.neighbors(v)):
            out.append(v)
    return frozenset(out)


def lex_bfs(g: Graph) -> list[int]:
    """Lexicographic BFS visit order via partition refinement.

    Ties are broken toward the smallest vertex id inside each class.
    """
    # each class: [members(dict used as ordered set), prev, next]
    head = None
    cell_of: dict[int, list] = {}
    if g.n == 0:
        return []
    first = [dict.fromkeys(range(g.n)), None, None]
    head = first
    for v in range(g.n):
        cell_of[v] = first
    order = []
    visited = [False] * g.n
    while head is not None:
        members = head[0]
        p = min(members)
        del members[p]
        if not members:
            head = head[2]
            if head is not None:
                head[1] = None
        visited[p] = True
        order.append(p)
        split: dict[int, list] = {}
        for w in g.neighbors(p):
            if visited[w]:
                continue
            cell = cell_of[w]
            new = split.get(id(cell))
            if new is None:
                new = [{}, cell[1], cell]
                if cell[1] is not None:
                    cell[1][2] = new
                else:
                    head = new
                cell[1] = new
                split[id(cell)] = new
            del cell[0][w]
            new[0][w] = None
            cell_of[w] = new
        for new in split.values():
            old = new[2]
            if not old[0]:
                new[2] = old[2]
                if old[2] is not None:
                    old[2][1] = new
    return order


def chordality_and_peo(g: Graph) -> tuple[bool, list[int] | None]:
    """Chordality test; returns a perfect elimination ordering when chordal.

    The ordering lists simplicial-first, i.e. it is the reverse Lex-BFS order.
    """
    peo = lex_bfs(g)[::-1]
    pos = {v: i for i, v in enumerate(peo)}
    adj = g.adjacency_sets()
    for v in peo:
        later = [w for w in g.neighbors(v) if pos[w] > pos[v]]
        if not later:
            continue
        u = min(later, key=pos.__getitem__)
        for w in later:
            if w != u and w not in adj[u]:
                return False, None
    return True, peo


def subdivide(g: Graph, k: int) -> Graph:
    """Replace every edge by a path with ``k`` edges.

    Subdivision vertices of the i-th sorted edge get ids
    ``n + i*(k-1) .. n + (i+1)*(k-1) - 1`` ordered from the smaller endpoint.
    """
    if k < 1:
        raise GraphError("subdivision parameter must be positive")
    edges = g.edges()
    n2 = g.n + len(edges) * (k - 1)
    out = []
    for i, (u, v) in enumerate(edges):
        path = [u] + [g.n + i * (k - 1) + j for j in range(k - 1)] + [v]
        out.extend(zip(path, path[1:]))
    return build_graph(n2, out)


def girth(g: Graph) -> int | None:
    """Length of a shortest cycle, ``UNREACHABLE`` for forests."""
    best = None
    for s in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if best is not None and 2 * dist[u] + 1 >= best:
                break
            for w in g.neighbors(u):
                if dist[w] == -1:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    cycle = dist[u] + dist[w] + 1
                    if best is None or cycle < best:
                        best = cycle
    return best


def _has_independent_set(masks: Sequence[int], cand: int, k: int) -> bool:
    if k == 0:
        return True
    if cand.bit_count() < k:
        return False
    while cand:
        low = cand & -cand
        v = low.bit_length() - 1
        cand ^= low
        if _has_independent_set(masks, cand & ~masks[v], k - 1):
            return True
        if cand.bit_count() < k:
            return False
    return False


def has_induced_star(g: Graph, leaves: int) -> bool:
    """Whether some vertex has ``leaves`` pairwise non-adjacent neighbors."""
    if leaves < 1:
        raise GraphError("leaves must be positive")
    masks = g.adjacency_masks()
    chordal, peo = chordality_and_peo(g)
    pos = {w: i for i, w in enumerate(peo or ())}
    for v in range(g.n):
        if g.degree(v) < leaves:
            continue
        if chordal:
            # greedy along a PEO is exact on chordal graphs
            picked = 0
            count = 0
            for w in sorted(g.neighbors(v), key=pos.__getitem__):
                if not masks[w] & picked:
                    picked |= 1 << w
                    count += 1
                    if count >= leaves:
                        return True
        elif _has_independent_set(masks, masks[v], leaves):
            return True
    return False
