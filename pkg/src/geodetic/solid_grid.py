"""Linear-time minimum geodetic sets on solid grid graphs.

The output is the set of degree-1 vertices together with every other corner
of each maximal corner sequence, found by walking the outer boundary of each
biconnected component clockwise.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Sequence

from .exact import SolveResult
from .graph import Graph, GraphError, block_decomposition, is_connected

Coords = Sequence[tuple[int, int]]


class GridError(GraphError):
    pass


@dataclass(frozen=True)
class CornerSequence:
    corners: tuple[int, ...]
    cyclic: bool

    def selected(self) -> tuple[int, ...]:
        """Every second corner; cyclic chains start after their smallest id."""
        seq = self.corners
        if self.cyclic:
            start = seq.index(min(seq))
            seq = seq[start + 1:] + seq[:start + 1]
        return seq[1::2]


def _check_embedding(g: Graph, coords: Coords) -> None:
    if len(coords) != g.n:
        raise GridError(f"expected {g.n} coordinates, got {len(coords)}")
    if len(set(map(tuple, coords))) != g.n:
        raise GridError("two vertices share a coordinate")
    for u, v in g.edges():
        (x1, y1), (x2, y2) = coords[u], coords[v]
        if abs(x1 - x2) + abs(y1 - y2) != 1:
            raise GridError(f"edge ({u}, {v}) is not a unit segment")


def validate_solid_grid(g: Graph, coords: Coords) -> bool:
    """True iff every bounded face of the drawing is a unit square.

    Every unit square whose four sides are edges is a face (no lattice point
    lies inside it), and Euler's formula counts m - n + 1 bounded faces.
    """
    if not is_connected(g):
        raise GridError("graph is disconnected")
    _check_embedding(g, coords)
    at = {tuple(c): v for v, c in enumerate(coords)}
    squares = 0
    for v, (x, y) in enumerate(coords):
        r, u, ru = at.get((x + 1, y)), at.get((x, y + 1)), at.get((x + 1, y + 1))
        if r is None or u is None or ru is None:
            continue
        if g.has_edge(v, r) and g.has_edge(v, u) and g.has_edge(r, ru) and g.has_edge(u, ru):
            squares += 1
    return squares == g.m - g.n + 1


def _require_valid(g: Graph, coords: Coords) -> None:
    if not validate_solid_grid(g, coords):
        raise GridError("embedding is not a solid grid")


def boundary_walk(g: Graph, coords: Coords, block: frozenset[int]) -> list[int]:
    """Clockwise outer boundary cycle of a biconnected block.

    Starts at the lexicographically smallest (x, y) and hugs the outer face
    with the left hand.
    """
    at = {tuple(coords[v]): v for v in block}
    adj = g.adjacency_sets()
    start = min(block, key=lambda v: tuple(coords[v]))
    sx, sy = coords[start]
    direction = (0, 1)
    if at.get((sx, sy + 1)) not in adj[start]:
        direction = (1, 0)
    cycle = [start]
    v, d = at[(sx + direction[0], sy + direction[1])], direction
    while v != start:
        cycle.append(v)
        x, y = coords[v]
        dx, dy = d
        for nd in ((-dy, dx), (dx, dy), (dy, -dx), (-dx, -dy)):
            w = at.get((x + nd[0], y + nd[1]))
            if w is not None and w in adj[v]:
                break
        else:
            raise GridError("isolated vertex inside a block")
        v, d = w, nd
        if len(cycle) > len(block):
            raise GridError("outer boundary of a block is not a simple cycle")
    return cycle


def _blocks_with_cycles(g: Graph):
    bd = block_decomposition(g)
    return bd, [b for b in bd.blocks if len(b) >= 3]


def _boundary_segments(g: Graph, coords: Coords):
    """Per block: (cycle, candidate positions, link flags)."""
    bd, blocks = _blocks_with_cycles(g)
    cuts = bd.cut_vertices
    out = []
    for block in blocks:
        cycle = boundary_walk(g, coords, block)
        cand = [i for i, v in enumerate(cycle) if g.degree(v) == 2 and v not in cuts]
        links = []
        L = len(cycle)
        for k, i in enumerate(cand):
            j = cand[(k + 1) % len(cand)]
            if len(cand) < 2:
                links.append(False)
                continue
            steps = (j - i) % L
            inner = [cycle[(i + s) % L] for s in range(1, steps)]
            links.append(all(g.degree(w) == 3 and w not in cuts for w in inner))
        out.append((cycle, cand, links))
    return out


def corner_paths(g: Graph, coords: Coords) -> list[tuple[int, ...]]:
    """Boundary paths from a degree-2 vertex through degree-3 vertices to a degree-2 vertex."""
    _require_valid(g, coords)
    paths = []
    for cycle, cand, links in _boundary_segments(g, coords):
        L = len(cycle)
        for k, i in enumerate(cand):
            if not links[k]:
                continue
            j = cand[(k + 1) % len(cand)]
            steps = (j - i) % L
            paths.append(tuple(cycle[(i + s) % L] for s in range(steps + 1)))
    return paths


def maximal_corner_sequences(g: Graph, coords: Coords) -> list[CornerSequence]:
    _require_valid(g, coords)
    seqs = []
    for cycle, cand, links in _boundary_segments(g, coords):
        corners = [cycle[i] for i in cand]
        k = len(corners)
        if k >= 2 and all(links):
            seqs.append(CornerSequence(tuple(corners), True))
            continue
        if not any(links):
            continue
        # rotate so that the chain list starts right after a missing link
        first = next(i for i in range(k) if not links[i])
        order = [(first + 1 + s) % k for s in range(k)]
        chain: list[int] = []
        for idx in order:
            if not chain:
                chain = [corners[idx]]
            if links[idx]:
                chain.append(corners[(idx + 1) % k])
            else:
                if len(chain) >= 2:
                    seqs.append(CornerSequence(tuple(chain), False))
                chain = []
    return seqs


def solid_grid_lower_bound(g: Graph, coords: Coords) -> int:
    """Degree-1 count plus half of every maximal corner sequence (rounded down)."""
    seqs = maximal_corner_sequences(g, coords)
    t = sum(1 for v in range(g.n) if g.degree(v) == 1)
    if g.n == 1:
        return 1
    return t + sum(len(s.corners) // 2 for s in seqs)


def solve_solid_grid(g: Graph, coords: Coords) -> SolveResult:
    start = time.perf_counter()
    if not is_connected(g):
        raise GridError("graph is disconnected")
    _require_valid(g, coords)
    if g.n == 1:
        return SolveResult(frozenset([0]), 1, True, "solid-grid", time.perf_counter() - start, lower_bound=1)
    chosen = {v for v in range(g.n) if g.degree(v) == 1}
    seqs = maximal_corner_sequences(g, coords)
    for seq in seqs:
        chosen.update(seq.selected())
    t = sum(1 for v in range(g.n) if g.degree(v) == 1)
    bound = t + sum(len(s.corners) // 2 for s in seqs)
    result = frozenset(chosen)
    return SolveResult(result, len(result), True, "solid-grid", time.perf_counter() - start, lower_bound=bound,
                       stats={"sequences": len(seqs)})


def grid_graph(rows: int, cols: int) -> tuple[Graph, list[tuple[int, int]]]:
    """Full ``rows`` x ``cols`` grid, ids row-major, coordinates (col, row)."""
    from .graph import build_graph

    coords = [(c, r) for r in range(rows) for c in range(cols)]
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return build_graph(rows * cols, edges), coords
