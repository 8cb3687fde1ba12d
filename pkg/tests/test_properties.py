"""Property tests on random small graphs, checked against the brute-force oracle."""

import networkx as nx
from hypothesis import given, settings
from hypothesis import strategies as st

from graphburn import DistanceCache, bff_d, bounds_from_sequence, build_graph, prym, validate_sequence
from graphburn.decision import separate
from graphburn.heuristics import compute_deficits
from graphburn.oracle import brute_force_burning_number, floyd_warshall


@st.composite
def graphs(draw, max_n=10):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), max_size=len(pairs))) if pairs else []
    return build_graph(n, edges)


@settings(max_examples=150, deadline=None)
@given(graphs())
def test_prym_matches_oracle(g):
    r = prym(g)
    assert r.optimum == brute_force_burning_number(g).burning_number
    assert validate_sequence(g, r.sequence, DistanceCache(g)) is None


@settings(max_examples=150, deadline=None)
@given(graphs(12), st.integers(0, 5))
def test_heuristic_bounds_bracket_optimum(g, seed):
    s = bff_d(g, DistanceCache(g), seed)
    b = bounds_from_sequence(s)
    assert b.L <= brute_force_burning_number(g, guard=12).burning_number <= b.U


@settings(max_examples=100, deadline=None)
@given(graphs(), st.data())
def test_deficits_match_definition(g, data):
    n = g.vertex_count
    seq = data.draw(st.lists(st.integers(0, n - 1), min_size=1, max_size=n, unique=True))
    B = len(seq)
    d = floyd_warshall(g)
    got = compute_deficits(g, seq, DistanceCache(g))
    for u in range(n):
        best = min(d[u, v] - (B - i) for i, v in enumerate(seq, start=1))
        want = max(0, best)
        assert (got[u] >= 2**31 - 1) if want == float("inf") else got[u] == want


@settings(max_examples=100, deadline=None)
@given(graphs(), st.data())
def test_separation_returns_violated_row(g, data):
    n = g.vertex_count
    seq = data.draw(st.lists(st.integers(0, n - 1), min_size=1, max_size=n, unique=True))
    cache = DistanceCache(g)
    con = separate(g, seq, cache)
    deficits = compute_deficits(g, seq, cache)
    if con is None:
        assert not deficits.any()
    else:
        assert deficits[con.witness] == deficits.max() >= 1
        assert not con.satisfied_by(seq)
        assert con.witness == int(min(v for v in range(n) if deficits[v] == deficits.max()))


@settings(max_examples=60, deadline=None)
@given(graphs(9), st.randoms(use_true_random=False))
def test_relabeling_invariance(g, rnd):
    perm = list(range(g.vertex_count))
    rnd.shuffle(perm)
    h = build_graph(g.vertex_count, [(perm[u], perm[v]) for u, v in g.edges()])
    assert prym(g).optimum == prym(h).optimum


def test_networkx_agrees_on_edge_counts():
    h = nx.gnm_random_graph(30, 70, seed=1)
    g = build_graph(30, list(h.edges()))
    assert g.edge_count == h.number_of_edges()
