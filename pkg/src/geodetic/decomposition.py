"""Nice tree decompositions of chordal graphs and path decompositions of interval graphs."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .graph import Graph, GraphError, chordality_and_peo, is_connected, simplicial_vertices
from .intervals import maximal_cliques

LEAF, INTRODUCE, FORGET, JOIN = "leaf", "introduce", "forget", "join"


@dataclass(frozen=True)
class NiceNode:
    kind: str
    bag: frozenset[int]
    children: tuple[int, ...] = ()
    vertex: int | None = None


@dataclass(frozen=True)
class NiceTreeDecomposition:
    nodes: tuple[NiceNode, ...]
    root: int

    def postorder(self) -> list[int]:
        out, stack = [], [(self.root, False)]
        while stack:
            v, done = stack.pop()
            if done:
                out.append(v)
                continue
            stack.append((v, True))
            for c in reversed(self.nodes[v].children):
                stack.append((c, False))
        return out

    @property
    def width(self) -> int:
        return max(len(node.bag) for node in self.nodes)


class _Builder:
    def __init__(self):
        self.nodes: list[NiceNode] = []

    def add(self, kind, bag, children=(), vertex=None) -> int:
        self.nodes.append(NiceNode(kind, frozenset(bag), tuple(children), vertex))
        return len(self.nodes) - 1

    def leaf(self) -> int:
        return self.add(LEAF, ())

    def introduce_all(self, top: int, vertices) -> int:
        bag = set(self.nodes[top].bag)
        for x in sorted(vertices):
            bag.add(x)
            top = self.add(INTRODUCE, bag, (top,), x)
        return top

    def forget_all(self, top: int, vertices, last: int | None = None) -> int:
        bag = set(self.nodes[top].bag)
        order = sorted(vertices, key=lambda v: (v == last, v))
        for x in order:
            bag.discard(x)
            top = self.add(FORGET, bag, (top,), x)
        return top

    def join(self, branches: list[int]) -> int:
        top = branches[0]
        for other in branches[1:]:
            top = self.add(JOIN, self.nodes[top].bag, (top, other))
        return top


def peo_maximal_cliques(g: Graph, peo: Sequence[int]) -> list[frozenset[int]]:
    pos = {v: i for i, v in enumerate(peo)}
    cands = []
    for v in peo:
        cands.append(frozenset([v, *(w for w in g.neighbors(v) if pos[w] > pos[v])]))
    cands = sorted(set(cands), key=lambda c: (-len(c), sorted(c)))
    out: list[frozenset[int]] = []
    for c in cands:
        if not any(c <= d for d in out):
            out.append(c)
    return sorted(out, key=sorted)


def _clique_tree(cliques: list[frozenset[int]], root: int) -> list[list[int]]:
    """Maximum-weight spanning tree (Prim) of the clique-intersection graph, as child lists."""
    k = len(cliques)
    children: list[list[int]] = [[] for _ in range(k)]
    in_tree = {root}
    best = {j: (len(cliques[root] & cliques[j]), root) for j in range(k) if j != root}
    while best:
        j = max(best, key=lambda c: (best[c][0], -c))
        w, parent = best.pop(j)
        if w == 0:
            raise GraphError("graph is disconnected")
        children[parent].append(j)
        in_tree.add(j)
        for c in best:
            w2 = len(cliques[j] & cliques[c])
            if w2 > best[c][0]:
                best[c] = (w2, j)
    return children


def build_nice_tree_decomposition(g: Graph) -> NiceTreeDecomposition:
    """Nice decomposition from a clique tree.

    The root clique is N[s] for the smallest simplicial vertex s, and s is the
    last vertex forgotten, so the root's child bag is {s}.
    """
    if not is_connected(g) or g.n == 0:
        raise GraphError("graph must be connected and nonempty")
    chordal, peo = chordality_and_peo(g)
    if not chordal:
        raise GraphError("graph is not chordal")
    cliques = peo_maximal_cliques(g, peo)
    s = min(simplicial_vertices(g))
    closed = frozenset([s, *g.neighbors(s)])
    root_clique = cliques.index(closed)
    children = _clique_tree(cliques, root_clique)
    b = _Builder()

    def build(c: int) -> int:
        bag = cliques[c]
        branches = []
        for ch in children[c]:
            top = build(ch)
            top = b.forget_all(top, cliques[ch] - bag)
            top = b.introduce_all(top, bag - cliques[ch])
            branches.append(top)
        if not branches:
            branches.append(b.introduce_all(b.leaf(), bag))
        return b.join(branches)

    top = build(root_clique)
    root = b.forget_all(top, cliques[root_clique], last=s)
    return NiceTreeDecomposition(tuple(b.nodes), root)


def path_decomposition_from_cliques(cliques: Sequence[frozenset[int]], last: int) -> NiceTreeDecomposition:
    """Introduce/forget chain through cliques in the given order, ending with ``last``."""
    b = _Builder()
    top = b.introduce_all(b.leaf(), cliques[0])
    for prev, cur in zip(cliques, cliques[1:]):
        top = b.forget_all(top, prev - cur)
        top = b.introduce_all(top, cur - prev)
    root = b.forget_all(top, cliques[-1], last=last)
    return NiceTreeDecomposition(tuple(b.nodes), root)


def interval_path_decomposition(rep: Sequence) -> NiceTreeDecomposition:
    """Path decomposition over left-to-right maximal cliques.

    The interval with the largest left endpoint is simplicial and lies in the
    last clique; it is forgotten last.
    """
    cliques = maximal_cliques(rep)
    last_clique = cliques[-1]
    last = max(last_clique, key=lambda v: (rep[v][0], -v))
    return path_decomposition_from_cliques(cliques, last)


def check_nice_decomposition(g: Graph, td: NiceTreeDecomposition) -> list[str]:
    """Return a list of violated invariants (empty when valid)."""
    problems = []
    nodes = td.nodes
    adj = g.adjacency_sets()
    if nodes[td.root].bag:
        problems.append("root bag is not empty")
    parent = {}
    for i, node in enumerate(nodes):
        for c in node.children:
            if c in parent:
                problems.append(f"node {c} has two parents")
            parent[c] = i
        bag = sorted(node.bag)
        for a_i, a in enumerate(bag):
            for bb in bag[a_i + 1:]:
                if bb not in adj[a]:
                    problems.append(f"bag of node {i} is not a clique")
        kids = [nodes[c] for c in node.children]
        if node.kind == LEAF:
            if kids or node.bag:
                problems.append(f"leaf {i} malformed")
        elif node.kind == INTRODUCE:
            if len(kids) != 1 or node.vertex in kids[0].bag or kids[0].bag | {node.vertex} != node.bag:
                problems.append(f"introduce {i} malformed")
        elif node.kind == FORGET:
            if len(kids) != 1 or node.vertex not in kids[0].bag or kids[0].bag - {node.vertex} != node.bag:
                problems.append(f"forget {i} malformed")
        elif node.kind == JOIN:
            if len(kids) != 2 or any(k.bag != node.bag for k in kids):
                problems.append(f"join {i} malformed")
        else:
            problems.append(f"unknown kind {node.kind}")
    order = td.postorder()
    if len(order) != len(nodes):
        problems.append("tree does not reach every node")
    # occurrence subtrees connected: each vertex has exactly one topmost node
    tops: dict[int, int] = {}
    for i, node in enumerate(nodes):
        for v in node.bag:
            p = parent.get(i)
            if p is None or v not in nodes[p].bag:
                tops[v] = tops.get(v, 0) + 1
    for v in range(g.n):
        if tops.get(v, 0) != 1:
            problems.append(f"occurrences of {v} are not a connected subtree")
    covered = set()
    for node in nodes:
        bag = sorted(node.bag)
        for a_i, a in enumerate(bag):
            for bb in bag[a_i + 1:]:
                covered.add((a, bb))
    for e in g.edges():
        if e not in covered:
            problems.append(f"edge {e} in no bag")
    return problems
