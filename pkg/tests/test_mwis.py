import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from blockgraph.graphs import Graph, complete_graph, cycle_graph, path_graph
from blockgraph.mwis import max_weight_independent_set


def brute_mwis(g: Graph) -> tuple[Fraction, tuple[int, ...]]:
    best_w, best_set = Fraction(0), ()
    for r in range(g.n + 1):
        for subset in itertools.combinations(range(g.n), r):
            if any(g.adjacent(u, v) for u, v in itertools.combinations(subset, 2)):
                continue
            w = g.weight_of(subset)
            if w > best_w or (w == best_w and subset < best_set):
                best_w, best_set = w, subset
    return best_w, best_set


def random_weighted_graph(rng, n, p):
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    weights = [Fraction(rng.randint(1, 12), rng.randint(1, 4)) for _ in range(n)]
    return Graph.build(n, edges, weights)


def test_triangle_unit():
    assert max_weight_independent_set(complete_graph(3)).weight == 1


def test_p3_heavy_middle():
    g = Graph.build(3, [(0, 1), (1, 2)], [1, 3, 1])
    res = max_weight_independent_set(g)
    assert res.weight == 3 and res.chosen == (1,)


def test_c5_unit():
    assert max_weight_independent_set(cycle_graph(5)).weight == 2


def test_empty():
    res = max_weight_independent_set(Graph.build(0))
    assert res.weight == 0 and res.chosen == ()


def test_rejects_nonpositive_weights():
    with pytest.raises(ValueError):
        max_weight_independent_set(path_graph(2), weights=[Fraction(0), Fraction(1)])


def test_matches_enumeration():
    rng = random.Random(79)
    for _ in range(150):
        g = random_weighted_graph(rng, rng.randint(0, 10), rng.choice([0.2, 0.5, 0.8]))
        res = max_weight_independent_set(g)
        want_w, want_set = brute_mwis(g)
        assert res.weight == want_w
        assert res.chosen == want_set  # lexicographic tie-break pinned
        assert not any(
            g.adjacent(u, v) for u, v in itertools.combinations(res.chosen, 2)
        )


def test_bigger_instances_settle():
    rng = random.Random(83)
    for _ in range(10):
        g = random_weighted_graph(rng, 16, 0.3)
        res = max_weight_independent_set(g)
        want_w, _ = brute_mwis(g)
        assert res.weight == want_w


def test_deterministic():
    rng = random.Random(89)
    g = random_weighted_graph(rng, 12, 0.4)
    first = max_weight_independent_set(g)
    for _ in range(3):
        again = max_weight_independent_set(g)
        assert again == first


@st.composite
def weighted_graphs(draw):
    n = draw(st.integers(min_value=0, max_value=8))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = [e for e in pairs if draw(st.booleans())]
    weights = [draw(st.integers(min_value=1, max_value=9)) for _ in range(n)]
    return Graph.build(n, edges, [Fraction(w) for w in weights])


@given(weighted_graphs())
@settings(max_examples=60, deadline=None)
def test_optimal_and_independent(g):
    res = max_weight_independent_set(g)
    want_w, want_set = brute_mwis(g)
    assert res.weight == want_w and res.chosen == want_set
