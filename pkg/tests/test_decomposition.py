from __future__ import annotations

import random

import pytest

from geodetic.decomposition import (
    FORGET,
    INTRODUCE,
    JOIN,
    LEAF,
    build_nice_tree_decomposition,
    check_nice_decomposition,
    interval_path_decomposition,
)
from geodetic.generators import random_chordal, random_interval
from geodetic.graph import GraphError, build_graph
from geodetic.intervals import intersection_graph

from conftest import complete_graph, cycle_graph, path_graph


def _kinds(td):
    return [td.nodes[v].kind for v in td.postorder()]


def test_k4_chain():
    td = build_nice_tree_decomposition(complete_graph(4))
    assert check_nice_decomposition(complete_graph(4), td) == []
    assert _kinds(td) == [LEAF] + [INTRODUCE] * 4 + [FORGET] * 4
    assert td.width == 4


def test_p3_cliques():
    g = path_graph(3)
    td = build_nice_tree_decomposition(g)
    assert check_nice_decomposition(g, td) == []
    full_bags = {node.bag for node in td.nodes if len(node.bag) == 2}
    assert full_bags == {frozenset({0, 1}), frozenset({1, 2})}


def test_rejects_non_chordal():
    with pytest.raises(GraphError):
        build_nice_tree_decomposition(cycle_graph(4))


def test_random_chordal_decompositions_valid():
    rng = random.Random(11)
    for seed in range(40):
        g = random_chordal(rng.randint(2, 16), rng.randint(2, 4), seed, leaves=rng.randint(0, 4))
        td = build_nice_tree_decomposition(g)
        assert check_nice_decomposition(g, td) == []
        assert td.nodes[td.root].bag == frozenset()
        root_child = td.nodes[td.nodes[td.root].children[0]]
        assert len(root_child.bag) == 1


def test_joins_are_binary_and_present():
    # a star forces several clique-tree branches
    star = build_graph(5, [(0, i) for i in range(1, 5)])
    td = build_nice_tree_decomposition(star)
    assert check_nice_decomposition(star, td) == []
    joins = [n for n in td.nodes if n.kind == JOIN]
    assert joins and all(len(n.children) == 2 for n in joins)


def test_interval_paths_have_no_joins():
    for seed in range(30):
        rep = random_interval(12, seed, span=20, max_len=4)
        g = intersection_graph(rep)
        td = interval_path_decomposition(rep)
        assert check_nice_decomposition(g, td) == []
        assert not any(n.kind == JOIN for n in td.nodes)


def test_checker_catches_breakage():
    from geodetic.decomposition import NiceNode, NiceTreeDecomposition

    g = path_graph(3)
    td = build_nice_tree_decomposition(g)
    nodes = list(td.nodes)
    i = next(i for i, n in enumerate(nodes) if n.kind == INTRODUCE)
    nodes[i] = NiceNode(INTRODUCE, nodes[i].bag | {2} if 2 not in nodes[i].bag else nodes[i].bag | {0},
                        nodes[i].children, nodes[i].vertex)
    assert check_nice_decomposition(g, NiceTreeDecomposition(tuple(nodes), td.root))
