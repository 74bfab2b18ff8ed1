"""Text codecs for graphs, grid embeddings and interval models, plus JSON documents.

Graph lines are ``p <n> <m>`` and ``e <u> <v>``; embeddings add ``v <id> <x> <y>``;
interval models use ``i <id> <lo_num> <lo_den> <hi_num> <hi_den>``.  Lines
starting with ``c`` and blank lines are ignored.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .graph import Graph, build_graph
from .intervals import intersection_graph


class ParseError(ValueError):
    pass


@dataclass(frozen=True)
class Instance:
    graph: Graph
    coords: tuple[tuple[int, int], ...] | None = None
    intervals: tuple[tuple[Fraction, Fraction], ...] | None = None


def _ints(parts: list[str], count: int, lineno: int) -> list[int]:
    if len(parts) != count + 1:
        raise ParseError(f"line {lineno}: expected {count} integers after {parts[0]!r}")
    try:
        return [int(p) for p in parts[1:]]
    except ValueError as exc:
        raise ParseError(f"line {lineno}: {exc}") from exc


def parse_instance(text: str) -> Instance:
    header = None
    edges: list[tuple[int, int]] = []
    coords: dict[int, tuple[int, int]] = {}
    ivs: dict[int, tuple[Fraction, Fraction]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts or parts[0].startswith("c"):
            continue
        tag = parts[0]
        if tag == "p":
            if header is not None:
                raise ParseError(f"line {lineno}: second header")
            header = _ints(parts, 2, lineno)
        elif tag == "e":
            edges.append(tuple(_ints(parts, 2, lineno)))
        elif tag == "v":
            vid, x, y = _ints(parts, 3, lineno)
            if vid in coords:
                raise ParseError(f"line {lineno}: duplicate coordinates for {vid}")
            coords[vid] = (x, y)
        elif tag == "i":
            vid, a, b, c, d = _ints(parts, 5, lineno)
            if b <= 0 or d <= 0:
                raise ParseError(f"line {lineno}: denominators must be positive")
            if vid in ivs:
                raise ParseError(f"line {lineno}: duplicate interval for {vid}")
            lo, hi = Fraction(a, b), Fraction(c, d)
            if lo > hi:
                raise ParseError(f"line {lineno}: interval has lo > hi")
            ivs[vid] = (lo, hi)
        else:
            raise ParseError(f"line {lineno}: unknown line type {tag!r}")

    rep = None
    if ivs:
        n_iv = len(ivs)
        if sorted(ivs) != list(range(n_iv)):
            raise ParseError("interval ids must be 0..n-1")
        rep = tuple(ivs[i] for i in range(n_iv))
        g = intersection_graph(rep)
        if header is not None and tuple(header) != (g.n, g.m):
            raise ParseError(f"header {header} disagrees with the interval model ({g.n} {g.m})")
        if edges and sorted(tuple(sorted(e)) for e in edges) != g.edges():
            raise ParseError("edge lines disagree with the interval model")
    else:
        if header is None:
            raise ParseError("missing 'p <n> <m>' header")
        n, m = header
        if len(edges) != m:
            raise ParseError(f"header declares {m} edges, found {len(edges)}")
        try:
            g = build_graph(n, edges)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
        if g.m != m:
            raise ParseError("duplicate edges")

    emb = None
    if coords:
        if sorted(coords) != list(range(g.n)):
            raise ParseError("every vertex needs exactly one 'v' line")
        emb = tuple(coords[i] for i in range(g.n))
    return Instance(g, emb, rep)


def format_graph(g: Graph, coords: Sequence[tuple[int, int]] | None = None) -> str:
    lines = [f"p {g.n} {g.m}"]
    lines += [f"e {u} {v}" for u, v in g.edges()]
    if coords is not None:
        lines += [f"v {i} {x} {y}" for i, (x, y) in enumerate(coords)]
    return "\n".join(lines) + "\n"


def format_intervals(rep: Sequence[tuple]) -> str:
    rep = [(Fraction(lo), Fraction(hi)) for lo, hi in rep]
    g = intersection_graph(rep)
    lines = [f"p {g.n} {g.m}"]
    for i, (lo, hi) in enumerate(rep):
        lines.append(f"i {i} {lo.numerator} {lo.denominator} {hi.numerator} {hi.denominator}")
    return "\n".join(lines) + "\n"


def format_instance(inst: Instance) -> str:
    if inst.intervals is not None:
        return format_intervals(inst.intervals)
    return format_graph(inst.graph, inst.coords)


def read_instance(path: str | Path) -> Instance:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_instance(text)


def dump_json(obj) -> str:
    """Sidecar documents: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def sidecar_path(path: str | Path) -> Path:
    return Path(str(path) + ".json")


def read_sidecar(path: str | Path) -> dict | None:
    side = sidecar_path(path)
    if not side.exists():
        return None
    try:
        return json.loads(side.read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad sidecar {side}: {exc}") from exc


@dataclass
class ResultDocument:
    method: str
    size: int
    vertices: list[int]
    optimal: bool | None
    lower_bound: int | None = None
    elapsed_ms: float = 0.0
    instance_stats: dict | None = None
    verdicts: dict | None = field(default=None)

    def to_json(self) -> str:
        # field order is the key order
        return json.dumps(asdict(self)) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ResultDocument":
        data = json.loads(text)
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise ParseError(f"unknown result keys {sorted(unknown)}")
        return cls(**data)
