"""Closed rational intervals: intersection graphs, maximal cliques, close-set family."""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .graph import Graph, GraphError

Interval = tuple[Fraction, Fraction]


def _as_interval(iv) -> Interval:
    lo, hi = Fraction(iv[0]), Fraction(iv[1])
    if lo > hi:
        raise GraphError(f"interval [{lo}, {hi}] has lo > hi")
    return lo, hi


def _scaled(rep: Sequence[Interval]) -> list[tuple[int, int]]:
    """Integer endpoints on a common denominator (order-preserving)."""
    den = 1
    for lo, hi in rep:
        den = lcm(den, lo.denominator, hi.denominator)
    return [(int(lo * den), int(hi * den)) for lo, hi in rep]


def intersection_graph(rep: Iterable) -> Graph:
    """Closed-interval intersection graph; touching endpoints intersect."""
    rep = [_as_interval(iv) for iv in rep]
    pts = _scaled(rep)
    order = sorted(range(len(pts)), key=lambda v: (pts[v][0], v))
    active: list[tuple[int, int]] = []
    adj: list[list[int]] = [[] for _ in pts]
    for v in order:
        lo, hi = pts[v]
        while active and active[0][0] < lo:
            heapq.heappop(active)
        for _, u in active:
            adj[u].append(v)
            adj[v].append(u)
        heapq.heappush(active, (hi, v))
    return Graph(len(pts), [sorted(a) for a in adj])


def maximal_cliques(rep: Sequence) -> list[frozenset[int]]:
    """Maximal cliques ordered left to right.

    Every maximal clique is the set of intervals containing some left endpoint.
    """
    rep = [_as_interval(iv) for iv in rep]
    pts = _scaled(rep)
    seen = {}
    for p in sorted({lo for lo, _ in pts}):
        clique = frozenset(v for v, (lo, hi) in enumerate(pts) if lo <= p <= hi)
        seen.setdefault(clique, p)
    cliques = list(seen)
    maximal = [c for c in cliques if not any(c < d for d in cliques)]
    maximal.sort(key=lambda c: seen[c])
    return maximal


def interval_family_A(X: Iterable[int], rep: Sequence) -> frozenset[frozenset[int]]:
    """Candidate close sets inside the clique X.

    For each u in X: the members starting no later than u, the members ending
    no earlier than u, and {u}.
    """
    X = sorted(set(X))
    rep = [_as_interval(iv) for iv in rep]
    for i, a in enumerate(X):
        for b in X[i + 1:]:
            if max(rep[a][0], rep[b][0]) > min(rep[a][1], rep[b][1]):
                raise GraphError(f"intervals {a} and {b} do not intersect")
    family = set()
    for u in X:
        family.add(frozenset(w for w in X if rep[w][0] <= rep[u][0]))
        family.add(frozenset(w for w in X if rep[w][1] >= rep[u][1]))
        family.add(frozenset([u]))
    return frozenset(family)
