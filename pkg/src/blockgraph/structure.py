"""Block-cut decomposition and the terminal/skeleton machinery.

Everything here is a pure function over immutable inputs.  The rooted
forest picks the minimum-id cutvertex of each component as root, which
makes terminals, classification and skeletons deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import TrivialComponentError
from .graphs import (
    Graph,
    bits,
    connected_components,
    mask_of,
    vertex_tuple,
)


@dataclass(frozen=True)
class BlockDecomposition:
    """Blocks (vertex sets, lex-sorted) and cutvertices of a graph.

    Every edge lies in exactly one block; bridges are 2-vertex blocks;
    isolated vertices belong to no block.
    """

    blocks: tuple[tuple[int, ...], ...]
    cutvertices: tuple[int, ...]


def block_decomposition(g: Graph) -> BlockDecomposition:
    """Standard articulation-point DFS, iterative to survive deep graphs."""
    n = g.n
    disc = [-1] * n
    low = [0] * n
    parent = [-1] * n
    edge_stack: list[tuple[int, int]] = []
    blocks: list[tuple[int, ...]] = []
    timer = 0

    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        work: list[tuple[int, iter]] = [(root, iter(sorted(g.neighbors(root))))]
        while work:
            v, it = work[-1]
            w = next(it, None)
            if w is None:
                work.pop()
                if work:
                    u = work[-1][0]
                    low[u] = min(low[u], low[v])
                    if low[v] >= disc[u]:
                        blk: set[int] = set()
                        while True:
                            e = edge_stack.pop()
                            blk.update(e)
                            if e == (u, v):
                                break
                        blocks.append(vertex_tuple(blk))
                continue
            if w == parent[v]:
                continue
            if disc[w] == -1:
                parent[w] = v
                edge_stack.append((v, w))
                disc[w] = low[w] = timer
                timer += 1
                work.append((w, iter(sorted(g.neighbors(w)))))
            elif disc[w] < disc[v]:
                edge_stack.append((v, w))
                low[v] = min(low[v], disc[w])

    counts = [0] * n
    for block in blocks:
        for v in block:
            counts[v] += 1
    cuts = tuple(v for v in range(n) if counts[v] >= 2)
    return BlockDecomposition(tuple(sorted(blocks)), cuts)


@dataclass(frozen=True)
class RootedBlockCutForest:
    """Rooted bipartite forest on cutvertices and block indices.

    ``parent_of_block[i]`` is the cutvertex above block ``i`` (every block
    has one, since roots are cutvertices); ``parent_of_cut[v]`` is the block
    index above cutvertex ``v``, or -1 for roots.
    """

    blocks: tuple[tuple[int, ...], ...]
    cutvertices: tuple[int, ...]
    roots: tuple[int, ...]
    parent_of_block: tuple[int, ...]
    parent_of_cut: dict[int, int]
    block_children: tuple[tuple[int, ...], ...]  # cutvertex children per block
    cut_children: dict[int, tuple[int, ...]]  # block-index children per cutvertex

    def is_leaf_block(self, i: int) -> bool:
        return not self.block_children[i]

    def grandparent_of_block(self, i: int) -> int | None:
        """Great-grandparent chain helper: the cutvertex two levels up."""
        w = self.parent_of_block[i]
        b = self.parent_of_cut.get(w, -1)
        if b == -1:
            return None
        return self.parent_of_block[b]


def rooted_block_cut_forest(dec: BlockDecomposition, g: Graph) -> RootedBlockCutForest:
    """Root each tree of the block-cut forest at its minimum-id cutvertex.

    Components without a cutvertex are trivial (a single vertex or a single
    block); the caller must strip them first.
    """
    cutset = set(dec.cutvertices)
    comp_of = {}
    for idx, comp in enumerate(connected_components(g)):
        for v in comp:
            comp_of[v] = idx
        if not any(v in cutset for v in comp):
            raise TrivialComponentError(
                f"component containing vertex {comp[0]} has no cutvertex"
            )

    blocks_at: dict[int, list[int]] = {v: [] for v in dec.cutvertices}
    for i, block in enumerate(dec.blocks):
        for v in block:
            if v in cutset:
                blocks_at[v].append(i)

    roots = []
    seen_comp = set()
    for v in dec.cutvertices:  # ascending id: first cutvertex per component wins
        if comp_of[v] not in seen_comp:
            seen_comp.add(comp_of[v])
            roots.append(v)

    parent_of_block = [-1] * len(dec.blocks)
    parent_of_cut: dict[int, int] = {}
    block_children: list[list[int]] = [[] for _ in dec.blocks]
    cut_children: dict[int, list[int]] = {v: [] for v in dec.cutvertices}

    visited_cut = set()
    visited_block = set()
    for root in roots:
        parent_of_cut[root] = -1
        visited_cut.add(root)
        queue: list[tuple[str, int]] = [("cut", root)]
        while queue:
            kind, x = queue.pop(0)
            if kind == "cut":
                for i in blocks_at[x]:
                    if i in visited_block:
                        continue
                    visited_block.add(i)
                    parent_of_block[i] = x
                    cut_children[x].append(i)
                    queue.append(("block", i))
            else:
                for v in dec.blocks[x]:
                    if v in cutset and v not in visited_cut:
                        visited_cut.add(v)
                        parent_of_cut[v] = x
                        block_children[x].append(v)
                        queue.append(("cut", v))

    return RootedBlockCutForest(
        dec.blocks,
        dec.cutvertices,
        tuple(roots),
        tuple(parent_of_block),
        parent_of_cut,
        tuple(tuple(sorted(ch)) for ch in block_children),
        {v: tuple(sorted(ch)) for v, ch in cut_children.items()},
    )


@dataclass(frozen=True)
class TerminalReport:
    """Terminals of both types plus the witnesses of each type-2 terminal.

    A witness of a type-2 terminal t is the cutvertex w on a downward chain
    t -> block -> w -> leaf block; it lies in a block containing t and in a
    leaf block.
    """

    type1: tuple[int, ...]
    type2: tuple[int, ...]
    witnesses: dict[int, tuple[int, ...]]

    def all_terminals(self) -> tuple[int, ...]:
        return vertex_tuple(self.type1 + self.type2)


def find_terminals(forest: RootedBlockCutForest) -> TerminalReport:
    type1 = []
    for v in forest.cutvertices:
        leaf_children = [i for i in forest.cut_children[v] if forest.is_leaf_block(i)]
        if len(leaf_children) >= 2:
            type1.append(v)

    type2 = set()
    witnesses: dict[int, set[int]] = {}
    for i, _ in enumerate(forest.blocks):
        if not forest.is_leaf_block(i):
            continue
        t = forest.grandparent_of_block(i)
        if t is None:
            continue
        w = forest.parent_of_block[i]
        type2.add(t)
        witnesses.setdefault(t, set()).add(w)

    return TerminalReport(
        tuple(sorted(type1)),
        tuple(sorted(type2)),
        {t: tuple(sorted(ws)) for t, ws in sorted(witnesses.items())},
    )


@dataclass(frozen=True)
class BlockClassification:
    """Partition of the blocks into the five structural classes.

    ``b_d`` pairs each witness-bearing leaf block with its partner block;
    entries are (b_w index, b_l2 index, terminal, witness).
    """

    b_l1: tuple[int, ...]
    b_l2: tuple[int, ...]
    b_l3: tuple[int, ...]
    b_w: tuple[int, ...]
    b_in: tuple[int, ...]
    b_d: tuple[tuple[int, int, int, int], ...]

    def double_block_vertices(
        self, forest: RootedBlockCutForest
    ) -> tuple[tuple[int, ...], ...]:
        return tuple(
            vertex_tuple(forest.blocks[bw] + forest.blocks[bl2])
            for bw, bl2, _, _ in self.b_d
        )


def classify_blocks(
    forest: RootedBlockCutForest, terminals: TerminalReport
) -> BlockClassification:
    """Five-way block partition driven by explicit terminal-witness chains.

    A chain (t, B, w, b) is accepted when b is a leaf block, its parent w is
    not a terminal, B = parent(w) has exactly the two cutvertices {t, w},
    and t = parent(B) is a type-2 terminal.  Chain-based pairing keeps b_l2
    and b_w in bijection for every rooting.
    """
    terminal_set = set(terminals.type1) | set(terminals.type2)
    witness_set = {w for ws in terminals.witnesses.values() for w in ws}
    cutset = set(forest.cutvertices)
    leafs = [i for i in range(len(forest.blocks)) if forest.is_leaf_block(i)]

    b_l1 = [i for i in leafs if forest.parent_of_block[i] in set(terminals.type1)]

    b_d: list[tuple[int, int, int, int]] = []
    used_l2 = set()
    used_w = set()
    for b in leafs:
        if b in b_l1:
            continue
        w = forest.parent_of_block[b]
        if w in terminal_set:
            continue
        parent_block = forest.parent_of_cut.get(w, -1)
        if parent_block == -1:
            continue
        cuts_in_parent = [v for v in forest.blocks[parent_block] if v in cutset]
        if len(cuts_in_parent) != 2:
            continue
        t = forest.parent_of_block[parent_block]
        if set(cuts_in_parent) != {t, w} or t not in set(terminals.type2):
            continue
        assert parent_block not in used_w and b not in used_l2
        used_w.add(parent_block)
        used_l2.add(b)
        b_d.append((parent_block, b, t, w))

    b_l2 = sorted(used_l2)
    b_w = sorted(used_w)
    classified = set(b_l1) | used_l2 | used_w
    b_l3 = [
        i
        for i in leafs
        if i not in classified
        and forest.parent_of_block[i] not in terminal_set
        and forest.parent_of_block[i] not in witness_set
    ]
    classified |= set(b_l3)
    b_in = [i for i in range(len(forest.blocks)) if i not in classified]
    return BlockClassification(
        tuple(b_l1), tuple(b_l2), tuple(b_l3), tuple(b_w), tuple(b_in), tuple(b_d)
    )


def skeleton(
    g_prime: Graph,
    forest: RootedBlockCutForest,
    classification: BlockClassification,
    terminals: TerminalReport,
) -> tuple[int, ...]:
    """Vertices left after stripping b_l1 blocks down to their type-1
    terminal and double-blocks down to their type-2 terminal."""
    removed: set[int] = set()
    type1 = set(terminals.type1)
    for i in classification.b_l1:
        removed.update(v for v in forest.blocks[i] if v not in type1)
    for bw, bl2, t, _ in classification.b_d:
        removed.update(
            v for v in forest.blocks[bw] + forest.blocks[bl2] if v != t
        )
    return tuple(v for v in range(g_prime.n) if v not in removed)


# -- trivial components -----------------------------------------------------


def split_trivial_components(
    g: Graph,
) -> tuple[tuple[tuple[int, ...], ...], tuple[tuple[int, ...], ...]]:
    """(non-trivial components, trivial components) of ``g``.

    A component is trivial when it is a single vertex or a single block,
    i.e. when it contains no cutvertex.
    """
    dec = block_decomposition(g)
    cutset = set(dec.cutvertices)
    nontrivial = []
    trivial = []
    for comp in connected_components(g):
        if len(comp) > 1 and any(v in cutset for v in comp):
            nontrivial.append(comp)
        else:
            trivial.append(comp)
    return tuple(nontrivial), tuple(trivial)


# -- backbones (vertex-minimum Steiner trees) -------------------------------


def _bfs_distances(g: Graph, source: int) -> list[int]:
    dist = [-1] * g.n
    dist[source] = 0
    queue = [source]
    i = 0
    while i < len(queue):
        v = queue[i]
        i += 1
        for u in g.neighbors(v):
            if dist[u] == -1:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


def _steiner_size(g: Graph, terminals: tuple[int, ...]) -> int:
    """Minimum vertex count of a tree connecting the terminals.

    Dreyfus-Wagner dynamic programming over terminal subsets with unit edge
    costs; a tree's vertex count is its edge count plus one.
    """
    t = len(terminals)
    if t == 1:
        return 1
    dist = [_bfs_distances(g, v) for v in range(g.n)]
    INF = 10 ** 9
    full = (1 << t) - 1
    dp = [[INF] * g.n for _ in range(full + 1)]
    for i, term in enumerate(terminals):
        dp[1 << i] = list(dist[term])
    for mask in range(1, full + 1):
        row = dp[mask]
        sub = (mask - 1) & mask
        while sub:
            other = mask ^ sub
            if sub < other:  # each split once
                a, b = dp[sub], dp[other]
                for v in range(g.n):
                    cand = a[v] + b[v]
                    if cand < row[v]:
                        row[v] = cand
            sub = (sub - 1) & mask
        # grow step: relax along shortest paths
        for v in range(g.n):
            dv = dist[v]
            rv = row[v]
            for u in range(g.n):
                cand = rv + dv[u]
                if cand < row[u]:
                    row[u] = cand
    best = min(dp[full])
    if best >= INF:
        raise ValueError("terminals are not connected to each other")
    return best + 1


def backbone(
    g: Graph, terminals: tuple[int, ...]
) -> tuple[tuple[int, ...], tuple[tuple[int, int], ...]]:
    """Vertex-minimum tree connecting the terminals, inside one component.

    Ties go to the lexicographically smallest vertex set.  Returns the tree
    vertex set and its edges; every leaf of the tree is a terminal.
    """
    terms = vertex_tuple(terminals)
    if not terms:
        raise ValueError("backbone of an empty terminal set is undefined")
    for v in terms:
        if not (0 <= v < g.n):
            raise ValueError(f"terminal {v} out of range")
    size = _steiner_size(g, terms)

    others = [v for v in range(g.n) if v not in set(terms)]
    chosen: tuple[int, ...] | None = None
    for extra in itertools.combinations(others, size - len(terms)):
        candidate = vertex_tuple(terms + extra)
        if _connected_subset(g, candidate):
            chosen = candidate
            break
    assert chosen is not None, "Steiner DP and subset scan disagree"

    edges = _bfs_tree_edges(g, chosen)
    leaf_degree = {v: 0 for v in chosen}
    for u, v in edges:
        leaf_degree[u] += 1
        leaf_degree[v] += 1
    assert all(
        leaf_degree[v] != 1 or v in set(terms) for v in chosen
    ), "minimum Steiner set produced a non-terminal leaf"
    return chosen, edges


def _connected_subset(g: Graph, vs: tuple[int, ...]) -> bool:
    if not vs:
        return True
    allowed = mask_of(vs)
    seen = 1 << vs[0]
    stack = [vs[0]]
    while stack:
        v = stack.pop()
        fresh = g.adj_mask(v) & allowed & ~seen
        seen |= fresh
        stack.extend(bits(fresh))
    return seen == allowed


def _bfs_tree_edges(g: Graph, vs: tuple[int, ...]) -> tuple[tuple[int, int], ...]:
    allowed = set(vs)
    root = vs[0]
    seen = {root}
    queue = [root]
    edges = []
    i = 0
    while i < len(queue):
        v = queue[i]
        i += 1
        for u in sorted(g.neighbors(v)):
            if u in allowed and u not in seen:
                seen.add(u)
                edges.append((min(u, v), max(u, v)))
                queue.append(u)
    return tuple(sorted(edges))
