from __future__ import annotations

import itertools
import random

import networkx as nx
import pytest

from geodetic.graph import Graph, build_graph, is_connected


def from_nx(h: nx.Graph) -> Graph:
    ids = {v: i for i, v in enumerate(sorted(h.nodes))}
    return build_graph(len(ids), [(ids[a], ids[b]) for a, b in h.edges])


def atlas_connected(max_n: int) -> list[Graph]:
    """All connected graphs on 1..max_n vertices up to isomorphism (max_n <= 7)."""
    return [from_nx(h) for h in nx.graph_atlas_g() if 0 < h.number_of_nodes() <= max_n and nx.is_connected(h)]


def random_connected(rng: random.Random, n: int, p: float | None = None) -> Graph:
    """Random spanning tree plus independent extra edges with probability p."""
    p = rng.uniform(0.1, 0.6) if p is None else p
    edges = {(rng.randrange(v), v) for v in range(1, n)}
    edges |= {(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < p}
    perm = list(range(n))
    rng.shuffle(perm)
    return build_graph(n, [(perm[a], perm[b]) for a, b in edges])


def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return build_graph(n, itertools.combinations(range(n), 2))


def star_graph(leaves: int) -> Graph:
    return build_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def shortest_path_vertices(g: Graph, u: int, v: int) -> frozenset[int]:
    """Vertices on some shortest u-v path, by enumerating every simple path."""
    if u == v:
        return frozenset([u])
    best, found = None, set()
    stack = [(u, (u,))]
    while stack:
        w, path = stack.pop()
        if best is not None and len(path) - 1 > best:
            continue
        if w == v:
            length = len(path) - 1
            if best is None or length < best:
                best, found = length, set(path)
            elif length == best:
                found |= set(path)
            continue
        for x in g.neighbors(w):
            if x not in path:
                stack.append((x, path + (x,)))
    return frozenset(found)


def brute_geodetic_number(g: Graph) -> int:
    from geodetic.metric import is_geodetic

    for k in range(1, g.n + 1):
        for S in itertools.combinations(range(g.n), k):
            if is_geodetic(g, S):
                return k
    raise AssertionError("unreachable")


def has_long_induced_cycle(g: Graph) -> bool:
    """Brute force: some vertex subset of size >= 4 induces a cycle."""
    for k in range(4, g.n + 1):
        for sub in itertools.combinations(range(g.n), k):
            h, _ = g.induced_subgraph(sub)
            if all(h.degree(v) == 2 for v in range(h.n)) and is_connected(h):
                return True
    return False


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240611)
