import itertools
import random
import time

import networkx as nx
import pytest

from graphburn import DistanceCache, bff_d, build_graph, solve_decision, validate_sequence
from graphburn.decision import (EMPTY, Assignment, ConstraintSet, CoveringConstraint, SearchResult,
                                SearchStatus, Verdict, feasibility_search, fill_smallest_unused,
                                initial_constraints, separate)
from graphburn.errors import InternalError
from graphburn.oracle import brute_force_decision

from _suite import from_nx


def _setup(h):
    g = from_nx(h) if not hasattr(h, "indptr") else h
    cache = DistanceCache(g)
    return g, cache, bff_d(g, cache)


def test_constraint_support_is_nested_and_contains_witness():
    g, cache, _ = _setup(nx.path_graph(7))
    con = CoveringConstraint(3, 4, cache.get(3))
    sizes = [len(con.support(i)) for i in range(1, 6)]
    assert sizes == [7, 5, 3, 1, 0]
    assert 3 in con.support(4).tolist()
    for i in range(1, 4):
        assert set(con.support(i + 1).tolist()) <= set(con.support(i).tolist())
    assert con.covers(3, 4) and not con.covers(4, 4) and con.covers(0, 1)
    assert con.satisfied_by([6, EMPTY, 5, EMPTY]) and not con.satisfied_by([EMPTY, 0, 5, 1])


def test_constraint_set_dedup_and_duplicate_add():
    g, cache, _ = _setup(nx.path_graph(5))
    cs = ConstraintSet(cache, [2, 4, 2])
    assert cs.witnesses == [2, 4] and len(cs) == 2 and 4 in cs
    with pytest.raises(InternalError):
        cs.add(4)


def test_initial_constraints_use_heuristic_rows():
    g, cache, warm = _setup(nx.karate_club_graph())
    before = cache.bfs_count
    cs = initial_constraints(g, 3, warm, cache)
    assert cs.witnesses == warm
    assert cache.bfs_count == before


def test_initial_constraints_tiny_graph_all_vertices():
    g, cache, _ = _setup(nx.empty_graph(3))
    assert len(initial_constraints(g, 3, [0, 1, 2], cache)) == 3


def test_separate_path5():
    g, cache, _ = _setup(nx.path_graph(5))
    con = separate(g, [2, 4], cache)
    assert con.witness == 0 and con.horizon == 2
    assert not con.satisfied_by([2, 4])


def test_separate_valid_sequence():
    g, cache, _ = _setup(nx.path_graph(4))
    assert separate(g, [1, 3], cache) is None


def test_separate_karate_below_optimum():
    g, cache, warm = _setup(nx.karate_club_graph())
    con = separate(g, warm[:2], cache)
    assert con is not None and not con.satisfied_by(warm[:2])


def test_search_full_horizon_complete():
    g, cache, _ = _setup(nx.cycle_graph(6))
    res = feasibility_search(g, 6, ConstraintSet(cache, range(6)))
    assert res.status is SearchStatus.COMPLETE
    seq = res.assignment.sequence()
    assert sorted(seq) == list(range(6))


def test_search_p4_single_source_infeasible():
    g, cache, _ = _setup(nx.path_graph(4))
    res = feasibility_search(g, 1, ConstraintSet(cache, [0, 3]))
    assert res.status is SearchStatus.EXHAUSTED_INFEASIBLE


def test_search_budget_reported():
    g, cache, _ = _setup(nx.path_graph(40))
    res = feasibility_search(g, 5, ConstraintSet(cache, range(0, 40, 3)), budget=0)
    assert res.status is SearchStatus.BUDGET_EXCEEDED


def test_fill_smallest_unused():
    g = build_graph(5, [])
    assert fill_smallest_unused(g, [3, EMPTY, 0, EMPTY]) == [3, 1, 0, 2]
    with pytest.raises(InternalError):
        Assignment([1, EMPTY]).sequence()


@pytest.mark.parametrize("h,b", [
    (nx.karate_club_graph(), 3),
    (nx.path_graph(9), 3),
    (nx.cycle_graph(16), 4),
    (nx.balanced_tree(3, 4), 5),
])
def test_boundary(h, b):
    g, cache, warm = _setup(h)
    lo = solve_decision(g, b - 1, warm, cache)
    hi = solve_decision(g, b, warm, cache)
    assert lo.verdict is Verdict.INFEASIBLE and lo.sequence is None
    assert hi.verdict is Verdict.FEASIBLE and len(hi.sequence) == b
    assert len(set(hi.sequence)) == b
    assert validate_sequence(g, hi.sequence, cache) is None
    for out in (lo, hi):
        assert out.constraints_loaded == out.initial_constraints + out.cuts_added
        assert len(set(out.witnesses)) == len(out.witnesses) <= g.vertex_count


def test_too_many_components_short_circuits():
    g, cache, warm = _setup(build_graph(6, [(0, 1), (2, 3), (4, 5)]))
    out = solve_decision(g, 2, warm, cache)
    assert out.verdict is Verdict.INFEASIBLE and out.constraints_loaded == 0 and out.nodes == 0
    # three sources suffice in count but the last one has radius 0
    assert not solve_decision(g, 3, warm, cache).feasible
    assert solve_decision(g, 4, warm, cache).feasible


def test_horizon_range():
    g, cache, warm = _setup(nx.path_graph(3))
    with pytest.raises(ValueError):
        solve_decision(g, 0, warm, cache)
    with pytest.raises(ValueError):
        solve_decision(g, 4, warm, cache)


def test_node_budget_gives_unknown():
    g, cache, warm = _setup(nx.grid_2d_graph(12, 12))
    out = solve_decision(g, 6, warm, cache, budget=50)
    assert out.verdict is Verdict.UNKNOWN and out.sequence is None


def test_expired_deadline_gives_unknown():
    g, cache, warm = _setup(nx.grid_2d_graph(12, 12))
    out = solve_decision(g, 6, warm, cache, deadline=time.monotonic() - 1)
    assert out.verdict is Verdict.UNKNOWN


@pytest.mark.parametrize("k", [2, 5])
def test_several_cuts_per_round_same_verdicts(k):
    g, cache, warm = _setup(nx.balanced_tree(2, 6))
    for B in range(3, 8):
        one = solve_decision(g, B, warm, cache)
        many = solve_decision(g, B, warm, cache, cuts_per_round=k)
        assert one.verdict is many.verdict
        assert many.constraints_loaded == many.initial_constraints + many.cuts_added


class _IgnoresRows:
    def solve(self, g, B, cs, budget=None, deadline=None, fill=None):
        return SearchResult(SearchStatus.COMPLETE, Assignment(list(range(B))), 1)


def test_backend_ignoring_rows_is_caught():
    g, cache, warm = _setup(nx.path_graph(9))
    with pytest.raises(InternalError):
        solve_decision(g, 3, warm, cache, backend=_IgnoresRows())


@pytest.mark.parametrize("seed", range(20))
def test_relaxation_never_wrongly_infeasible(seed):
    rng = random.Random(seed)
    h = nx.gnp_random_graph(rng.randint(4, 10), 0.35, seed=seed)
    g, cache, _ = _setup(h)
    n = g.vertex_count
    for B in range(1, n + 1):
        truth = brute_force_decision(g, B) is not None
        for k in range(1, n + 1, 2):
            w = rng.sample(range(n), k)
            res = feasibility_search(g, B, ConstraintSet(cache, w))
            if res.status is SearchStatus.EXHAUSTED_INFEASIBLE:
                assert not truth
            else:
                seq = res.assignment.sequence()
                assert len(set(seq)) == B
                assert all(c.satisfied_by(seq) for c in ConstraintSet(cache, w).constraints(B))


def test_exhaustive_small_verdicts():
    # every 5-vertex graph up to edge subsets of K5 with 0..4 edges
    pairs = list(itertools.combinations(range(5), 2))
    for m in range(5):
        for edges in itertools.combinations(pairs, m):
            g, cache, warm = _setup(build_graph(5, edges))
            for B in range(1, 6):
                got = solve_decision(g, B, warm, cache).feasible
                assert got == (brute_force_decision(g, B) is not None), (edges, B)
