import itertools
import random

import pytest

from blockgraph.graphs import (
    Graph,
    complete_graph,
    cycle_graph,
    disjoint_union,
    girth,
    path_graph,
)
from blockgraph.recognition import (
    BlockClassSpec,
    ComplexityStatus,
    are_isomorphic,
    complexity_status,
    contains_induced_linear_forest,
    has_even_cycle,
    is_biconnected,
    is_c_block_graph,
    parse_block_class,
)


def random_graph(rng, n, p):
    return Graph.build(
        n,
        [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p],
    )


def relabel(g: Graph, perm: list[int]) -> Graph:
    return Graph.build(g.n, [(perm[u], perm[v]) for u, v in g.edges])


def biclique(a: int, b: int) -> Graph:
    return Graph.build(a + b, [(i, a + j) for i in range(a) for j in range(b)])


class TestBiconnected:
    def test_cycle(self):
        assert is_biconnected(cycle_graph(4))

    def test_path_middle_cuts(self):
        assert not is_biconnected(path_graph(3))

    def test_single_vertex(self):
        assert not is_biconnected(Graph.build(1))

    def test_edge(self):
        assert is_biconnected(path_graph(2))


class TestIsomorphism:
    def test_permuted_cycle(self):
        assert are_isomorphic(cycle_graph(4), relabel(cycle_graph(4), [2, 0, 3, 1]))

    def test_c4_vs_p4(self):
        assert not are_isomorphic(cycle_graph(4), path_graph(4))

    def test_k3_vs_p3(self):
        assert not are_isomorphic(complete_graph(3), path_graph(3))

    def test_equivalence_and_relabel_invariance(self):
        rng = random.Random(11)
        pool = [random_graph(rng, rng.randint(1, 6), 0.5) for _ in range(20)]
        for g in pool:
            assert are_isomorphic(g, g)
            perm = list(range(g.n))
            rng.shuffle(perm)
            assert are_isomorphic(g, relabel(g, perm))
        for g, h in itertools.combinations(pool, 2):
            assert are_isomorphic(g, h) == are_isomorphic(h, g)
        for g, h, k in itertools.combinations(pool, 3):
            if are_isomorphic(g, h) and are_isomorphic(h, k):
                assert are_isomorphic(g, k)

    def test_same_degrees_not_isomorphic(self):
        # C6 vs 2C3: both 2-regular on 6 vertices
        assert not are_isomorphic(
            cycle_graph(6), disjoint_union(cycle_graph(3), cycle_graph(3))
        )


def bowtie() -> Graph:
    return Graph.build(5, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)])


class TestCBlock:
    def test_forest_is_p2_block(self):
        cert = is_c_block_graph(path_graph(5), BlockClassSpec.forests())
        assert cert.ok and len(cert.matches) == 4

    def test_cycle_is_not(self):
        cert = is_c_block_graph(cycle_graph(4), BlockClassSpec.forests())
        assert not cert.ok and cert.offending == (0, 1, 2, 3)

    def test_bowtie_with_triangles(self):
        spec = BlockClassSpec.from_graphs([path_graph(2), cycle_graph(3)])
        assert is_c_block_graph(bowtie(), spec).ok

    def test_forest_iff_acyclic(self):
        rng = random.Random(3)
        for _ in range(200):
            g = random_graph(rng, rng.randint(0, 7), 0.4)
            assert is_c_block_graph(g, BlockClassSpec.forests()).ok == (
                girth(g) is None
            )

    def test_members_validated(self):
        with pytest.raises(ValueError, match="biconnected"):
            BlockClassSpec.from_graphs([path_graph(3)])
        with pytest.raises(ValueError, match="2 vertices"):
            BlockClassSpec.from_graphs([Graph.build(1)])

    def test_members_deduplicated(self):
        spec = BlockClassSpec.from_graphs(
            [cycle_graph(3), complete_graph(3), path_graph(2)]
        )
        assert len(spec.members) == 2 and spec.d == 3

    def test_truncation_members(self):
        oc = BlockClassSpec.odd_cactus_mode()
        t2 = oc.truncated(2)
        sizes = sorted(m.n for m in t2.members)
        assert sizes == [2, 3, 5, 7]
        assert oc.truncated(1).d == 3

    def test_parse_block_class(self):
        assert parse_block_class("odd-cactus").odd_cactus
        spec = parse_block_class("2 1\n0 1\n%\n3 3\n0 1\n0 2\n1 2\n")
        assert spec.d == 3 and len(spec.members) == 2


class TestEvenCycle:
    def test_c4(self):
        assert has_even_cycle(cycle_graph(4))

    def test_c5(self):
        assert not has_even_cycle(cycle_graph(5))

    def test_k4(self):
        assert has_even_cycle(complete_graph(4))

    def test_matches_cycle_enumeration(self):
        from blockgraph.oracle import enumerate_simple_cycles

        rng = random.Random(5)
        for _ in range(200):
            g = random_graph(rng, rng.randint(0, 8), 0.35)
            exhaustive = any(
                len(c) % 2 == 0 for c in enumerate_simple_cycles(g)
            )
            assert has_even_cycle(g) == exhaustive


def brute_contains(g: Graph, pattern) -> bool:
    """Check all vertex subsets of the right size for an induced match."""
    from blockgraph.graphs import induced_subgraph

    total = sum(pattern)
    pattern_graph = Graph.build(0)
    for part in sorted(pattern, reverse=True):
        pattern_graph = disjoint_union(pattern_graph, path_graph(part))
    for subset in itertools.combinations(range(g.n), total):
        sub, _ = induced_subgraph(g, subset)
        if are_isomorphic(sub, pattern_graph):
            return True
    return False


class TestLinearForest:
    def test_p7_contains_2p3(self):
        ok, witness = contains_induced_linear_forest(path_graph(7), (3, 3))
        assert ok and len(witness) == 6

    def test_biclique_2p3_free(self):
        ok, _ = contains_induced_linear_forest(biclique(3, 3), (3, 3))
        assert not ok

    def test_c6_2p3_free(self):
        assert brute_contains(cycle_graph(6), (3, 3)) is False
        ok, _ = contains_induced_linear_forest(cycle_graph(6), (3, 3))
        assert not ok

    def test_witness_is_induced_match(self):
        rng = random.Random(9)
        for _ in range(60):
            g = random_graph(rng, rng.randint(1, 7), 0.4)
            for pattern in [(3,), (3, 3), (2, 2), (1, 1, 1), (4,)]:
                if sum(pattern) > g.n:
                    continue
                got, witness = contains_induced_linear_forest(g, pattern)
                assert got == brute_contains(g, pattern)
                if got:
                    from blockgraph.graphs import induced_subgraph

                    sub, _ = induced_subgraph(g, witness)
                    target = Graph.build(0)
                    for part in sorted(pattern, reverse=True):
                        target = disjoint_union(target, path_graph(part))
                    assert are_isomorphic(sub, target)


class TestComplexityStatus:
    @pytest.mark.parametrize(
        "pattern,problem,expected",
        [
            ((5,), "fvs", ComplexityStatus.POLYNOMIAL),
            ((6,), "oct", ComplexityStatus.NP_COMPLETE),
            ((1, 4), "ect", ComplexityStatus.OPEN),
            ((3, 3, 3), "fvs", ComplexityStatus.POLYNOMIAL),
            ((3, 3), "ect", ComplexityStatus.POLYNOMIAL),
            ((4,), "oct", ComplexityStatus.POLYNOMIAL),
            ((2, 2, 2), "oct", ComplexityStatus.POLYNOMIAL),
            ((1, 1, 3), "oct", ComplexityStatus.POLYNOMIAL),
            ((3, 3), "oct", ComplexityStatus.OPEN),
            ((2, 5), "oct", ComplexityStatus.NP_COMPLETE),
            ((1, 5), "oct", ComplexityStatus.OPEN),
            ((6,), "fvs", ComplexityStatus.OPEN),
            ((1, 4), "oct", ComplexityStatus.OPEN),
            (None, "fvs", ComplexityStatus.NP_COMPLETE),
            (None, "oct", ComplexityStatus.NP_COMPLETE),
        ],
    )
    def test_table(self, pattern, problem, expected):
        assert complexity_status(pattern, problem) == expected

    def test_fvs_ect_rows_agree(self):
        patterns = [
            p
            for k in range(1, 8)
            for p in partitions(k)
        ]
        for p in patterns:
            assert complexity_status(p, "fvs") == complexity_status(p, "ect")


def partitions(k: int, largest: int | None = None):
    if k == 0:
        yield ()
        return
    cap = largest if largest is not None else k
    for first in range(min(k, cap), 0, -1):
        for rest in partitions(k - first, first):
            yield (first,) + rest
