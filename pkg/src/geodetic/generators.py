"""Seeded random corpora: k-trees, interval families and solid polyominoes."""

from __future__ import annotations

import random
from fractions import Fraction

from .graph import Graph, GraphError, build_graph, is_connected
from .intervals import intersection_graph


def random_chordal(n: int, omega: int, seed: int, leaves: int = 0) -> Graph:
    """Random (omega-1)-tree on ``n`` vertices plus ``leaves`` pendant vertices.

    Starts from K_omega and attaches each new vertex to an (omega-1)-subset
    of an existing omega-clique, so the clique number is min(n, omega).
    """
    if n < 1 or omega < 1:
        raise GraphError("n and omega must be positive")
    rng = random.Random(seed)
    k = min(omega, n)
    if k == 1 and n > 1:
        raise GraphError("omega = 1 only admits a single vertex")
    edges = [(a, b) for a in range(k) for b in range(a + 1, k)]
    cliques = [tuple(range(k))]
    for v in range(k, n):
        base = rng.choice(cliques)
        sub = sorted(rng.sample(base, k - 1))
        edges += [(u, v) for u in sub]
        cliques.append(tuple(sub) + (v,))
    total = n
    for _ in range(leaves):
        edges.append((rng.randrange(total), total))
        total += 1
    return build_graph(total, edges)


def random_interval(n: int, seed: int, span: int = 30, max_len: int = 5,
                    max_tries: int = 10_000) -> list[tuple[Fraction, Fraction]]:
    """``n`` integer intervals in [0, span], redrawn until the intersection graph is connected."""
    if n < 1:
        raise GraphError("n must be positive")
    rng = random.Random(seed)
    for _ in range(max_tries):
        rep = []
        for _ in range(n):
            lo = rng.randint(0, span)
            rep.append((Fraction(lo), Fraction(lo + rng.randint(0, max_len))))
        if is_connected(intersection_graph(rep)):
            return rep
    raise GraphError("no connected interval family found; widen max_len or shrink span")


def _cell_graph(cells: set[tuple[int, int]]) -> tuple[set, set]:
    points, edges = set(), set()
    for x, y in cells:
        corners = [(x, y), (x + 1, y), (x + 1, y + 1), (x, y + 1)]
        points.update(corners)
        for a, b in zip(corners, corners[1:] + corners[:1]):
            edges.add((min(a, b), max(a, b)))
    return points, edges


def random_solid_grid(max_vertices: int, seed: int, cells: int | None = None,
                      tails: int = 2, max_tries: int = 10_000) -> tuple[Graph, list[tuple[int, int]]]:
    """A random solid grid graph with at most ``max_vertices`` vertices.

    Grows a polyomino cell by cell (rejecting holes), then hangs up to
    ``tails`` lattice paths off free boundary points so that degree-1
    vertices occur.
    """
    from .solid_grid import validate_solid_grid

    rng = random.Random(seed)
    for _ in range(max_tries):
        target = cells if cells is not None else rng.randint(max_vertices // 5, max(1, max_vertices // 2))
        shape: set[tuple[int, int]] = {(0, 0)} if target else set()
        while len(shape) < target:
            x, y = rng.choice(sorted(shape))
            dx, dy = rng.choice([(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (1, -1)])
            cand = (x + dx, y + dy)
            trial = shape | {cand}
            if len(_cell_graph(trial)[0]) > max_vertices:
                break
            shape = trial
        points, edges = _cell_graph(shape) if shape else ({(0, 0)}, set())
        for _ in range(rng.randint(0, tails)):
            start = rng.choice(sorted(points))
            for _ in range(rng.randint(1, 3)):
                if len(points) >= max_vertices:
                    break
                dx, dy = rng.choice([(1, 0), (-1, 0), (0, 1), (0, -1)])
                nxt = (start[0] + dx, start[1] + dy)
                if nxt in points:
                    break
                points.add(nxt)
                edges.add((min(start, nxt), max(start, nxt)))
                start = nxt
        if len(points) > max_vertices:
            continue
        coords = sorted(points)
        ids = {p: i for i, p in enumerate(coords)}
        g = build_graph(len(coords), [(ids[a], ids[b]) for a, b in sorted(edges)])
        if is_connected(g) and validate_solid_grid(g, coords):
            return g, coords
    raise GraphError("could not generate a solid grid")
