"""Vertex cover on cubic planar graphs to geodetic sets: the f1 gadget graph.

Each source vertex becomes a 13-vertex gadget; each source edge adds three
cross edges chosen by the counterclockwise edge labels at both endpoints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from ..graph import Graph, build_graph
from .sat_interval import ReductionError


@dataclass(frozen=True)
class RotationSystem:
    """``rotation[v]`` lists the three neighbours of v counterclockwise; position i is label e_i^v."""

    graph: Graph
    rotation: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        g = self.graph
        if len(self.rotation) != g.n:
            raise ReductionError("one rotation per vertex is required")
        for v in range(g.n):
            if g.degree(v) != 3:
                raise ReductionError(f"vertex {v} has degree {g.degree(v)}, expected 3")
            rot = self.rotation[v]
            if len(rot) != 3 or set(rot) != set(g.neighbors(v)):
                raise ReductionError(f"rotation at {v} does not list its neighbours")

    def label(self, v: int, w: int) -> int:
        return self.rotation[v].index(w)


def rotation_from_coordinates(g: Graph, coords: Sequence[tuple[float, float]]) -> RotationSystem:
    """Counterclockwise order by angle, starting from the smallest angle in [0, 2pi)."""
    rot = []
    for v in range(g.n):
        x, y = coords[v]
        ang = lambda w: math.atan2(coords[w][1] - y, coords[w][0] - x) % (2 * math.pi)
        rot.append(tuple(sorted(g.neighbors(v), key=ang)))
    return RotationSystem(g, tuple(rot))


def k4_preset() -> RotationSystem:
    g = build_graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    return rotation_from_coordinates(g, [(0.0, 0.0), (0.0, 4.0), (-4.0, -3.0), (4.0, -3.0)])


def prism_preset() -> RotationSystem:
    edges = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]
    g = build_graph(6, edges)
    coords = [(0.0, 1.0), (-1.0, -1.0), (1.0, -1.0), (0.0, 4.0), (-4.0, -3.0), (4.0, -3.0)]
    return rotation_from_coordinates(g, coords)


PRESETS = {"K4": k4_preset, "prism": prism_preset}

_PAIRS = ((0, 1), (1, 2), (0, 2))
GADGET_SIZE = 13


def _pair(i: int, j: int) -> tuple[int, int]:
    a, b = i % 3, j % 3
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class F1Graph:
    graph: Graph
    labels: tuple[str, ...]
    source: RotationSystem

    def id_of(self, label: str) -> int:
        return self.labels.index(label)

    def z_vertices(self) -> list[int]:
        return [i for i, name in enumerate(self.labels) if name.startswith("z")]


def _gadget_labels(v: int) -> list[str]:
    names = [f"c^{v}"] + [f"t{i}^{v}" for i in range(3)]
    for kind in "xyz":
        names += [f"{kind}{a}{b}^{v}" for a, b in _PAIRS]
    return names


def vc_to_partial_grid(rs: RotationSystem) -> F1Graph:
    g = rs.graph
    labels: list[str] = []
    for v in range(g.n):
        labels += _gadget_labels(v)
    ids = {name: i for i, name in enumerate(labels)}
    at = lambda kind, v: ids[f"{kind}^{v}"]
    edges = []
    for v in range(g.n):
        c = at("c", v)
        for i in range(3):
            edges.append((c, at(f"t{i}", v)))
        for a, b in _PAIRS:
            x, y, z = (at(f"{k}{a}{b}", v) for k in "xyz")
            edges += [(c, x), (x, y), (y, z)]
        for i in range(3):
            a, b = _pair(i, i + 1)
            y = at(f"y{a}{b}", v)
            edges += [(at(f"t{i}", v), y), (y, at(f"t{(i + 1) % 3}", v))]
    for v, w in g.edges():
        i, j = rs.label(v, w), rs.label(w, v)
        if rs.rotation[w][j] != v:
            raise ReductionError(f"inconsistent labels on edge ({v}, {w})")
        y = lambda vert, a, b: at("y%d%d" % _pair(a, b), vert)
        edges.append((at(f"t{i}", v), at(f"t{j}", w)))
        edges.append((y(v, i, i + 1), y(w, j - 1, j)))
        edges.append((y(v, i - 1, i), y(w, j + 1, j)))
    return F1Graph(build_graph(len(labels), edges), tuple(labels), rs)


def is_vertex_cover(g: Graph, cover: Iterable[int]) -> bool:
    cover = set(cover)
    return all(u in cover or v in cover for u, v in g.edges())


def vc_witness_geodetic(f1: F1Graph, cover: Iterable[int]) -> frozenset[int]:
    """All z-vertices plus the centre of each cover vertex's gadget."""
    cover = frozenset(cover)
    src = f1.source.graph
    if any(not 0 <= v < src.n for v in cover):
        raise ReductionError("cover vertex out of range")
    if not is_vertex_cover(src, cover):
        raise ReductionError("not a vertex cover of the source graph")
    return frozenset(f1.z_vertices()) | {f1.id_of(f"c^{v}") for v in cover}
