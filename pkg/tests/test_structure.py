import random

import pytest

from blockgraph.errors import TrivialComponentError
from blockgraph.graphs import (
    Graph,
    cycle_graph,
    induced_subgraph,
    path_graph,
    star_graph,
)
from blockgraph.oracle import brute_steiner_tree
from blockgraph.structure import (
    backbone,
    block_decomposition,
    classify_blocks,
    find_terminals,
    rooted_block_cut_forest,
    skeleton,
    split_trivial_components,
)


def bowtie() -> Graph:
    return Graph.build(5, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)])


def forest_of(g: Graph):
    dec = block_decomposition(g)
    return rooted_block_cut_forest(dec, g)


def random_graph(rng, n, p):
    return Graph.build(
        n,
        [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p],
    )


class TestBlockDecomposition:
    def test_cycle_single_block(self):
        dec = block_decomposition(cycle_graph(4))
        assert dec.blocks == ((0, 1, 2, 3),) and dec.cutvertices == ()

    def test_path(self):
        dec = block_decomposition(path_graph(3))
        assert dec.blocks == ((0, 1), (1, 2)) and dec.cutvertices == (1,)

    def test_bowtie(self):
        dec = block_decomposition(bowtie())
        assert dec.blocks == ((0, 1, 2), (0, 3, 4)) and dec.cutvertices == (0,)

    def test_isolated_vertices_blockless(self):
        g = Graph.build(3, [(0, 1)])
        dec = block_decomposition(g)
        assert dec.blocks == ((0, 1),)

    def test_edge_partition(self):
        rng = random.Random(13)
        for _ in range(150):
            g = random_graph(rng, rng.randint(0, 8), 0.4)
            dec = block_decomposition(g)
            per_block = []
            for block in dec.blocks:
                bset = set(block)
                per_block.append(
                    {e for e in g.edges if e[0] in bset and e[1] in bset}
                )
            all_edges = [e for s in per_block for e in s]
            assert sorted(all_edges) == list(g.edges)
            assert len(all_edges) == len(set(all_edges))
            # shared vertices between two blocks are single cutvertices
            for i in range(len(dec.blocks)):
                for j in range(i + 1, len(dec.blocks)):
                    shared = set(dec.blocks[i]) & set(dec.blocks[j])
                    assert len(shared) <= 1
                    assert shared <= set(dec.cutvertices)

    def test_cutvertices_disconnect_their_component(self):
        from blockgraph.graphs import connected_components, is_connected

        rng = random.Random(17)
        for _ in range(150):
            g = random_graph(rng, rng.randint(1, 7), 0.4)
            dec = block_decomposition(g)
            comp_of = {}
            for comp in connected_components(g):
                for v in comp:
                    comp_of[v] = comp
            for v in range(g.n):
                comp = comp_of[v]
                if len(comp) == 1:
                    disconnects = False
                else:
                    rest, _ = induced_subgraph(g, [u for u in comp if u != v])
                    disconnects = not is_connected(rest)
                in_two_blocks = sum(v in b for b in dec.blocks) >= 2
                assert in_two_blocks == (v in dec.cutvertices)
                assert disconnects == in_two_blocks


class TestRootedForest:
    def test_p5_rooted_at_one(self):
        f = forest_of(path_graph(5))
        assert f.roots == (1,)
        assert f.parent_of_cut[1] == -1

    def test_bowtie_root_centre(self):
        f = forest_of(bowtie())
        assert f.roots == (0,)
        assert len(f.cut_children[0]) == 2

    def test_p7_leaf_blocks(self):
        f = forest_of(path_graph(7))
        assert f.roots == (1,)
        leaves = [f.blocks[i] for i in range(len(f.blocks)) if f.is_leaf_block(i)]
        assert sorted(leaves) == [(0, 1), (5, 6)]

    def test_trivial_component_rejected(self):
        g = cycle_graph(4)
        with pytest.raises(TrivialComponentError):
            forest_of(g)

    def test_alternation(self):
        rng = random.Random(23)
        for _ in range(100):
            g = random_graph(rng, rng.randint(2, 8), 0.3)
            nontrivial, _ = split_trivial_components(g)
            if not nontrivial:
                continue
            keep = [v for comp in nontrivial for v in comp]
            sub, _ = induced_subgraph(g, keep)
            f = forest_of(sub)
            for i, block in enumerate(f.blocks):
                parent = f.parent_of_block[i]
                assert parent in block
                for child in f.block_children[i]:
                    assert child in block
            # every leaf of the forest is a block node
            for v in f.cutvertices:
                assert f.cut_children[v] or f.parent_of_cut[v] != -1


class TestTerminals:
    def test_star_centre_type1(self):
        f = forest_of(star_graph(3))
        t = find_terminals(f)
        assert t.type1 == (0,) and t.type2 == ()

    def test_p7_type2(self):
        f = forest_of(path_graph(7))
        t = find_terminals(f)
        assert t.type1 == () and t.type2 == (4,)
        assert t.witnesses == {4: (5,)}

    def test_bowtie_type1(self):
        t = find_terminals(forest_of(bowtie()))
        assert t.type1 == (0,)

    def test_every_nontrivial_component_has_terminal(self):
        rng = random.Random(29)
        seen = 0
        for _ in range(300):
            g = random_graph(rng, rng.randint(2, 8), 0.35)
            nontrivial, _ = split_trivial_components(g)
            for comp in nontrivial:
                seen += 1
                sub, _ = induced_subgraph(g, comp)
                t = find_terminals(forest_of(sub))
                assert t.type1 or t.type2
        assert seen > 50


class TestClassification:
    def test_star_all_pendant(self):
        f = forest_of(star_graph(3))
        t = find_terminals(f)
        c = classify_blocks(f, t)
        assert len(c.b_l1) == 3
        assert not (c.b_l2 or c.b_l3 or c.b_w or c.b_in)
        assert skeleton(star_graph(3), f, c, t) == (0,)

    def test_p7_classes(self):
        g = path_graph(7)
        f = forest_of(g)
        t = find_terminals(f)
        c = classify_blocks(f, t)
        blocks = f.blocks
        assert [blocks[i] for i in c.b_l2] == [(5, 6)]
        assert [blocks[i] for i in c.b_w] == [(4, 5)]
        assert c.double_block_vertices(f) == ((4, 5, 6),)
        assert [blocks[i] for i in c.b_l3] == [(0, 1)]
        assert sorted(blocks[i] for i in c.b_in) == [(1, 2), (2, 3), (3, 4)]
        assert skeleton(g, f, c, t) == (0, 1, 2, 3, 4)

    def test_bowtie_classes(self):
        g = bowtie()
        f = forest_of(g)
        t = find_terminals(f)
        c = classify_blocks(f, t)
        assert len(c.b_l1) == 2 and not c.b_in
        assert skeleton(g, f, c, t) == (0,)

    def test_partition_and_pairing(self):
        rng = random.Random(31)
        for _ in range(300):
            g = random_graph(rng, rng.randint(2, 8), 0.35)
            nontrivial, _ = split_trivial_components(g)
            if not nontrivial:
                continue
            keep = [v for comp in nontrivial for v in comp]
            sub, _ = induced_subgraph(g, keep)
            f = forest_of(sub)
            t = find_terminals(f)
            c = classify_blocks(f, t)
            groups = [c.b_l1, c.b_l2, c.b_l3, c.b_w, c.b_in]
            everything = [i for grp in groups for i in grp]
            assert sorted(everything) == list(range(len(f.blocks)))
            assert len(c.b_l2) == len(c.b_w) == len(c.b_d)
            for bw, bl2, term, wit in c.b_d:
                shared = set(f.blocks[bw]) & set(f.blocks[bl2])
                assert shared == {wit}
                dbl = set(f.blocks[bw]) | set(f.blocks[bl2])
                assert term in dbl
                assert set(t.type2) & dbl == {term}


class TestBackbone:
    def test_single_terminal(self):
        verts, edges = backbone(path_graph(5), (2,))
        assert verts == (2,) and edges == ()

    def test_tree_path(self):
        verts, edges = backbone(path_graph(5), (0, 4))
        assert verts == (0, 1, 2, 3, 4) and len(edges) == 4

    def test_c4_opposite(self):
        verts, _ = backbone(cycle_graph(4), (0, 2))
        assert verts == (0, 1, 2)  # lex-smallest of the two 3-vertex trees
        report = brute_steiner_tree(cycle_graph(4), (0, 2))
        assert report.optimum == 3

    def test_empty_terminals_error(self):
        with pytest.raises(ValueError):
            backbone(path_graph(3), ())

    def test_matches_oracle(self):
        rng = random.Random(37)
        for _ in range(80):
            n = rng.randint(2, 8)
            g = random_graph(rng, n, 0.5)
            from blockgraph.graphs import connected_components

            comps = connected_components(g)
            comp = max(comps, key=len)
            if len(comp) < 2:
                continue
            sub, _ = induced_subgraph(g, comp)
            k = rng.randint(1, min(3, sub.n))
            terms = tuple(sorted(rng.sample(range(sub.n), k)))
            verts, edges = backbone(sub, terms)
            assert len(verts) == brute_steiner_tree(sub, terms).optimum
            assert len(edges) == len(verts) - 1

    def test_size_bound_on_sp3_free_block_graphs(self):
        # on sP3-free inputs the tree connecting a component's terminals
        # stays within 2 * |terminals| * (4s - 2) vertices
        import random as _random

        from blockgraph.generators import is_sp3_free, random_c_block_graph
        from blockgraph.recognition import BlockClassSpec

        rng = _random.Random(41)
        spec = BlockClassSpec.from_graphs([path_graph(2), cycle_graph(3)])
        checked = 0
        for s in (2, 3):
            for _ in range(120):
                g = random_c_block_graph(rng, spec)
                if not is_sp3_free(g, s):
                    continue
                nontrivial, _ = split_trivial_components(g)
                for comp in nontrivial:
                    sub, _ = induced_subgraph(g, comp)
                    f = rooted_block_cut_forest(block_decomposition(sub), sub)
                    t = find_terminals(f)
                    terms = t.all_terminals()
                    if not terms:
                        continue
                    verts, _ = backbone(sub, terms)
                    assert len(verts) <= 2 * len(terms) * (4 * s - 2)
                    checked += 1
        assert checked >= 40
