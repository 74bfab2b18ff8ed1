"""Shortest-path intervals, geodetic checks and the clique-cutset rule."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .graph import DistanceTable, Graph, GraphError, bfs_distances, distance_table, is_connected


class MetricError(ValueError):
    pass


@dataclass(frozen=True)
class CloseSet:
    """``members`` are the vertices of X nearest to the witness, at ``base_distance``."""

    base_distance: int
    members: frozenset[int]


def _row(g: Graph, s: int, dist: DistanceTable | None) -> np.ndarray:
    if dist is not None and s in dist:
        return dist.row(s)
    d = bfs_distances(g, s)
    return np.array([-1 if x is None else x for x in d], dtype=np.int64)


def interval_between(g: Graph, u: int, v: int, dist: DistanceTable | None = None) -> frozenset[int]:
    """All vertices on some shortest u-v path."""
    du = _row(g, u, dist)
    dv = _row(g, v, dist)
    if du[v] < 0:
        raise MetricError(f"vertices {u} and {v} lie in different components")
    mask = (du >= 0) & (dv >= 0) & (du + dv == du[v])
    return frozenset(int(w) for w in np.flatnonzero(mask))


def _coverage(rows: np.ndarray, cols: list[int]) -> np.ndarray:
    """Boolean vector of vertices covered by pairs among the given BFS rows.

    ``rows[i]`` is the distance row of vertex ``cols[i]``.
    """
    covered = np.zeros(rows.shape[1], dtype=bool)
    for i, u in enumerate(cols):
        target = rows[:, u][:, None]
        covered |= ((rows[i][None, :] + rows) == target).any(axis=0)
    return covered


def _checked_rows(g: Graph, S: Iterable[int], dist: DistanceTable | None) -> tuple[np.ndarray, list[int]]:
    members = sorted(set(S))
    if not members:
        raise MetricError("vertex set is empty")
    for s in members:
        if not 0 <= s < g.n:
            raise MetricError(f"vertex {s} out of range")
    if dist is not None and all(s in dist for s in members):
        rows = np.stack([dist.row(s) for s in members])
    else:
        rows = distance_table(g, members).rows
    if (rows[:, members] < 0).any():
        raise MetricError("vertex set spans several components")
    return rows, members


def interval_closure(g: Graph, S: Iterable[int], dist: DistanceTable | None = None) -> frozenset[int]:
    """Union of I(u, v) over all pairs of S, including u = v."""
    rows, members = _checked_rows(g, S, dist)
    return frozenset(int(w) for w in np.flatnonzero(_coverage(rows, members)))


def _require_connected(g: Graph) -> None:
    if not is_connected(g):
        raise MetricError("graph is disconnected")


def is_geodetic(g: Graph, S: Iterable[int], dist: DistanceTable | None = None) -> bool:
    _require_connected(g)
    S = list(S)
    if g.n == 0:
        return True
    if not S:
        return False
    rows, members = _checked_rows(g, S, dist)
    return bool(_coverage(rows, members).all())


def is_edge_geodetic(g: Graph, S: Iterable[int], dist: DistanceTable | None = None) -> bool:
    """Every edge lies on a shortest path between two members of S."""
    _require_connected(g)
    S = list(S)
    edges = g.edges()
    if not edges:
        return True
    if not S:
        return False
    rows, members = _checked_rows(g, S, dist)
    a = np.array([e[0] for e in edges])
    b = np.array([e[1] for e in edges])
    covered = np.zeros(len(edges), dtype=bool)
    for i, u in enumerate(members):
        total = rows[:, u][:, None]
        fwd = (rows[i][a][None, :] + 1 + rows[:, b]) == total
        bwd = (rows[i][b][None, :] + 1 + rows[:, a]) == total
        covered |= (fwd | bwd).any(axis=0)
    return bool(covered.all())


def close_set(g: Graph, y: int, X: Iterable[int], dist: DistanceTable | None = None) -> CloseSet:
    """The subset of the clique X nearest to ``y``."""
    X = sorted(set(X))
    if not X:
        raise MetricError("clique must be nonempty")
    adj = g.adjacency_sets()
    for i, a in enumerate(X):
        for b in X[i + 1:]:
            if b not in adj[a]:
                raise MetricError(f"{sorted(X)} is not a clique")
    row = _row(g, y, dist)
    ds = [int(row[x]) for x in X]
    if min(ds) < 0:
        raise MetricError(f"vertex {y} is not connected to the clique")
    base = min(ds)
    # distances to a clique can differ by at most one
    assert max(ds) - base <= 1, "clique distances span more than two values"
    return CloseSet(base, frozenset(x for x, d in zip(X, ds) if d == base))


def covered_through_cutset(A: Iterable[int], B: Iterable[int], X: Iterable[int]) -> frozenset[int]:
    """Cutset vertices on shortest paths between vertices close to A and B."""
    A, B, X = frozenset(A), frozenset(B), frozenset(X)
    if not A or not B:
        raise MetricError("close sets must be nonempty")
    if not (A <= X and B <= X):
        raise MetricError("close sets must lie inside the cutset")
    both = A & B
    return both if both else A | B


def pair_interval_masks(g: Graph, dist: DistanceTable | None = None) -> list[list[int]]:
    """``masks[u][v]`` is I(u, v) as an int bitset (0 when disconnected)."""
    if dist is None or len(dist.sources) != g.n:
        dist = distance_table(g)
    D = dist.rows
    n = g.n
    weights = [1 << w for w in range(n)]
    masks = [[0] * n for _ in range(n)]
    for u in range(n):
        du = D[u]
        hit = (du[None, :] + D) == du[:, None]
        hit &= (du[None, :] >= 0) & (D >= 0)
        for v in range(u, n):
            if du[v] < 0:
                continue
            mask = 0
            for w in np.flatnonzero(hit[v]):
                mask |= weights[w]
            masks[u][v] = masks[v][u] = mask
    return masks


__all__ = [
    "CloseSet",
    "GraphError",
    "MetricError",
    "close_set",
    "covered_through_cutset",
    "interval_between",
    "interval_closure",
    "is_edge_geodetic",
    "is_geodetic",
    "pair_interval_masks",
]
