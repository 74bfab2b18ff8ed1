from __future__ import annotations

import random
from itertools import product

import pytest

from geodetic.exact import SolveBudget, min_geodetic_bruteforce
from geodetic.fpt import (
    EMPTY_TYPE,
    CapExceeded,
    DPBudgetExhausted,
    TypeTuple,
    check_certificates,
    compatible_forget,
    compatible_introduce,
    compatible_join,
    compatible_root,
    dp_min_geodetic_chordal,
    dp_min_geodetic_interval,
    enumerate_valid_types,
    forget_parent,
    introduce_parents,
    is_valid_type,
    join_parents,
)
from geodetic.generators import random_chordal, random_interval
from geodetic.graph import build_graph
from geodetic.intervals import intersection_graph, interval_family_A
from geodetic.metric import is_geodetic

from conftest import complete_graph, path_graph

X0, X1, X01 = 0b01, 0b10, 0b11


def T(scope, t_int=(), t_ext=(), cov=0, bag=0):
    return TypeTuple(scope, frozenset(t_int), frozenset(t_ext), cov, bag)


# -- valid types ---------------------------------------------------------------


def test_empty_bag_has_one_type():
    assert list(enumerate_valid_types([])) == [EMPTY_TYPE]


def test_singleton_bag_by_hand():
    types = set(enumerate_valid_types([0]))
    # bag empty: (int, ext) in 2x2 with cov free unless both set; bag {x}: int forced
    expect = set()
    for t_int, t_ext in product([(), (X0,)], repeat=2):
        covs = [X0] if t_int and t_ext else [0, X0]
        expect |= {T(X0, t_int, t_ext, c, 0) for c in covs}
    for t_ext in [(), (X0,)]:
        covs = [X0] if t_ext else [0, X0]
        expect |= {T(X0, (X0,), t_ext, c, X0) for c in covs}
    assert types == expect and len(types) == 10


def test_pair_bag_matches_raw_filter():
    subsets = [0, X0, X1, X01]
    families = [frozenset(s for i, s in enumerate(subsets) if bits >> i & 1) for bits in range(16)]
    raw = {TypeTuple(X01, a, b, c, d) for a in families for b in families for c in subsets for d in subsets}
    assert len(raw) == 16 * 16 * 4 * 4
    assert {t for t in raw if is_valid_type(t)} == set(enumerate_valid_types([0, 1]))


def test_enumeration_respects_cap():
    with pytest.raises(CapExceeded):
        list(enumerate_valid_types(range(4)))


def test_interval_type_count_bound():
    rep = [(0, 4), (1, 5), (2, 3)]
    for bag in ([0], [0, 1], [0, 1, 2]):
        fam = interval_family_A(bag, rep)
        assert len(fam) <= 3 * len(bag)
        count = sum(1 for _ in enumerate_valid_types(bag, "interval", family=fam))
        assert count <= 2 ** (2 * len(fam)) * 4 ** len(bag)


# -- compatibility examples -----------------------------------------------------


def test_introduce_requires_singleton_int_for_new_solution_vertex():
    child = T(X0, (X0,), (X0,), X0, X0)
    parents = [p for p in introduce_parents(child, 1) if p.t_bag & X1]
    assert parents and all(X1 in p.t_int for p in parents)
    for p in parents:
        assert compatible_introduce(p, child, 1)
        broken = TypeTuple(p.scope, p.t_int - {X1}, p.t_ext, p.t_cov, p.t_bag)
        assert not compatible_introduce(broken, child, 1)


def test_introduce_cov_must_restrict():
    child = T(X0, (), (), 0, 0)
    for p in introduce_parents(child, 1):
        if p.t_cov & X0 == 0:
            assert not compatible_introduce(p, T(X0, (), (), X0, 0), 1)


def test_introduce_from_empty_bag_truth_table():
    parents = list(enumerate_valid_types([0]))
    accepted = {p for p in parents if compatible_introduce(p, EMPTY_TYPE, 0)}
    # a fresh vertex sees no earlier solution vertex: int mirrors bag, cov only from itself
    expect = {T(X0, (), (), 0, 0), T(X0, (), (X0,), 0, 0), T(X0, (X0,), (), X0, X0), T(X0, (X0,), (X0,), X0, X0)}
    assert accepted == expect == set(introduce_parents(EMPTY_TYPE, 0))


def test_forget_rejects_external_sets_through_x():
    child = T(X01, (X0,), (X01,), X01, X0)
    assert forget_parent(child, 1) is None
    assert not any(compatible_forget(p, child, 1) for p in enumerate_valid_types([0]))


def test_forget_int_projection():
    child = T(X01, (X1,), (), X01, 0)
    # a vertex close to {x} alone is close to the rest of the bag after forgetting x
    good, bad = T(X0, (X0,), (), X0, 0), T(X0, (), (), X0, 0)
    assert compatible_forget(good, child, 1) and not compatible_forget(bad, child, 1)
    assert forget_parent(child, 1) == good


def test_join_examples():
    assert compatible_join(EMPTY_TYPE, EMPTY_TYPE, EMPTY_TYPE)
    t1 = T(X0, (X0,), (), X0, X0)
    t2 = T(X0, (), (), X0, X0)
    assert not any(compatible_join(t, t1, t2) for t in enumerate_valid_types([0]))
    assert list(join_parents(t1, t2)) == []


def test_root_examples():
    assert compatible_root(T(X0, (X0,), (), X0, X0), 0)
    assert not compatible_root(T(X0, (X0,), (X0,), X0, X0), 0)
    assert not compatible_root(T(X0, (), (), X0, 0), 0)


# -- forward generators agree with the predicates ------------------------------


@pytest.mark.parametrize("child_bag,x", [((), 0), ((0,), 1), ((0, 1), 2)])
def test_introduce_generator_exhaustive(child_bag, x):
    parents = list(enumerate_valid_types(child_bag + (x,)))
    for t1 in enumerate_valid_types(child_bag):
        assert set(introduce_parents(t1, x)) == {p for p in parents if compatible_introduce(p, t1, x)}


@pytest.mark.parametrize("parent_bag,x", [((), 0), ((0,), 1), ((0, 1), 2)])
def test_forget_generator_exhaustive(parent_bag, x):
    parents = list(enumerate_valid_types(parent_bag))
    for t1 in enumerate_valid_types(parent_bag + (x,)):
        p = forget_parent(t1, x)
        assert ({p} if p else set()) == {q for q in parents if compatible_forget(q, t1, x)}


@pytest.mark.parametrize("bag", [(), (0,)])
def test_join_generator_exhaustive(bag):
    types = list(enumerate_valid_types(bag))
    for t1 in types:
        for t2 in types:
            assert set(join_parents(t1, t2)) == {t for t in types if compatible_join(t, t1, t2)}


# -- the dynamic programs ---------------------------------------------------------


def test_chordal_examples():
    res = dp_min_geodetic_chordal(path_graph(3))
    assert res.vertices == {0, 2} and res.optimal
    assert dp_min_geodetic_chordal(complete_graph(3)).size == 3
    assert dp_min_geodetic_chordal(build_graph(1, [])).vertices == {0}


def test_k4_needs_cap_four():
    with pytest.raises(CapExceeded):
        dp_min_geodetic_chordal(complete_graph(4))
    assert dp_min_geodetic_chordal(complete_graph(4), omega_cap=4).size == 4


def test_chordal_dp_matches_bruteforce():
    rng = random.Random(2)
    for seed in range(15):
        g = random_chordal(rng.randint(2, 9), rng.randint(2, 3), seed, leaves=rng.randint(0, 2))
        res = dp_min_geodetic_chordal(g)
        assert res.size == min_geodetic_bruteforce(g).size
        assert is_geodetic(g, res.vertices)


def test_chordal_certificates_sound():
    for seed in range(4):
        g = random_chordal(6, 3, seed, leaves=1)
        res, td, tables = dp_min_geodetic_chordal(g, keep_tables=True)
        assert check_certificates(g, td, tables) == []


def test_budget_exhaustion_raises():
    g = random_chordal(12, 3, 1)
    with pytest.raises(DPBudgetExhausted):
        dp_min_geodetic_chordal(g, SolveBudget(max_candidates=5))


def test_interval_examples():
    assert dp_min_geodetic_interval([(0, 1), (1, 2), (2, 3), (3, 4)]).size == 2
    assert dp_min_geodetic_interval([(0, 5)] * 5).size == 5


def test_interval_dp_matches_bruteforce():
    rng = random.Random(4)
    for seed in range(15):
        n = rng.randint(2, 10)
        rep = random_interval(n, seed, span=2 * n, max_len=4)
        g = intersection_graph(rep)
        res = dp_min_geodetic_interval(rep)
        assert res.size == min_geodetic_bruteforce(g).size
        assert is_geodetic(g, res.vertices)


def test_interval_certificates_sound():
    rep = random_interval(7, 3, span=10, max_len=3)
    res, td, tables = dp_min_geodetic_interval(rep, keep_tables=True)
    assert check_certificates(intersection_graph(rep), td, tables) == []
