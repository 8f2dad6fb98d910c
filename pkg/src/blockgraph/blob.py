"""Blob-graph construction and the candidate family for the completion phase.

Two vertex sets are adjacent when they intersect or an edge joins them.
The blob graph has one vertex per connected subset; the candidate family
restricts that to singletons, class members and double-blocks, which is all
the completion phase ever selects from.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import recognition, structure
from .errors import SizeCapError
from .graphs import Graph, bits, induced_on_mask, mask_of

BLOB_CAP_DEFAULT = 12

SINGLETON = "singleton"
C_BLOCK = "c-block"
DOUBLE_BLOCK = "double-block"


def _connected_subsets(g: Graph, max_size: int) -> list[int]:
    """All masks of connected subsets with 1..max_size vertices.

    Depth-first growth anchored at each subset's minimum vertex: a set is
    grown only by vertices larger than its anchor, so each subset is found
    from exactly one anchor (duplicates within an anchor are dropped via a
    seen-set).
    """
    out: list[int] = []
    seen: set[int] = set()
    for anchor in range(g.n):
        higher = mask_of(range(anchor, g.n))
        start = 1 << anchor
        stack = [start]
        seen.add(start)
        while stack:
            mask = stack.pop()
            out.append(mask)
            if bin(mask).count("1") >= max_size:
                continue
            frontier = g.neighborhood_mask(mask) & higher
            for v in bits(frontier):
                nxt = mask | (1 << v)
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
    return out


def blob_graph(g: Graph, cap: int = BLOB_CAP_DEFAULT) -> tuple[Graph, tuple[tuple[int, ...], ...]]:
    """The graph on all connected subsets of ``g`` plus the index->subset map.

    Subsets are ordered lexicographically.  The vertex count is exponential,
    so the input size is capped.
    """
    if g.n > cap:
        raise SizeCapError(f"blob graph is capped at {cap} vertices, got {g.n}")
    subsets = sorted(
        (tuple(bits(m)) for m in _connected_subsets(g, g.n)),
    )
    masks = [mask_of(s) for s in subsets]
    nbrs = [g.neighborhood_mask(m) | m for m in masks]
    edges = [
        (i, j)
        for i in range(len(masks))
        for j in range(i + 1, len(masks))
        if nbrs[i] & masks[j]
    ]
    return Graph.build(len(subsets), edges), tuple(subsets)


@dataclass(frozen=True)
class ConflictGraph:
    """Candidate vertex sets with conflict edges and exact weights.

    ``origins`` tags each candidate as singleton / c-block / double-block.
    After filtering against a skeleton S, ``anchors`` holds the single
    S-vertex each surviving anchored candidate meets (None for candidates
    disjoint from S) and ``reduced`` the candidate minus S; conflict edges
    of a filtered family are computed between the reduced sets.
    """

    candidates: tuple[tuple[int, ...], ...]
    origins: tuple[str, ...]
    weights: tuple[Fraction, ...]
    conflicts: tuple[tuple[int, int], ...]
    anchors: tuple[int | None, ...] | None = None
    reduced: tuple[tuple[int, ...], ...] | None = None

    def __len__(self) -> int:
        return len(self.candidates)

    def conflict_masks(self) -> list[int]:
        """Adjacency of the conflict relation as bitmasks over candidates."""
        adj = [0] * len(self.candidates)
        for i, j in self.conflicts:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        return adj


def _conflict_edges(g: Graph, masks: list[int]) -> list[tuple[int, int]]:
    closed = [g.neighborhood_mask(m) | m for m in masks]
    return [
        (i, j)
        for i in range(len(masks))
        for j in range(i + 1, len(masks))
        if closed[i] & masks[j]
    ]


def candidate_family(g: Graph, spec: recognition.BlockClassSpec) -> ConflictGraph:
    """Singletons, class-member subsets and double-block subsets of ``g``.

    Candidates are ordered lexicographically by vertex set; weights are the
    exact sums of member vertex weights.
    """
    entries: list[tuple[tuple[int, ...], str]] = [((v,), SINGLETON) for v in range(g.n)]
    if spec.odd_cactus:
        member_cap = limit = g.n
    elif spec.d is not None:
        member_cap = spec.d
        limit = min(2 * spec.d - 1, g.n)
    else:  # empty class: only singletons are ever feasible
        member_cap = limit = 0
    if limit >= 2:
        for mask in _connected_subsets(g, limit):
            size = bin(mask).count("1")
            if size < 2:
                continue
            sub, vs = induced_on_mask(g, mask)
            if size <= member_cap and spec.match_block(sub) is not None:
                entries.append((vs, C_BLOCK))
            elif _is_double_block(sub, spec):
                entries.append((vs, DOUBLE_BLOCK))
    entries.sort(key=lambda e: e[0])
    sets = [e[0] for e in entries]
    masks = [mask_of(s) for s in sets]
    return ConflictGraph(
        tuple(sets),
        tuple(e[1] for e in entries),
        tuple(g.weight_of(s) for s in sets),
        tuple(_conflict_edges(g, masks)),
    )


def _is_double_block(sub: Graph, spec: recognition.BlockClassSpec) -> bool:
    """Exactly two blocks sharing exactly one cutvertex, both in the class."""
    dec = structure.block_decomposition(sub)
    if len(dec.blocks) != 2 or len(dec.cutvertices) != 1:
        return False
    if len(dec.blocks[0]) + len(dec.blocks[1]) != sub.n + 1:
        return False
    for block in dec.blocks:
        piece, _ = induced_on_mask(sub, mask_of(block))
        if spec.match_block(piece) is None:
            return False
    return True


def double_block_cutvertex(g: Graph, candidate: tuple[int, ...]) -> int:
    """The unique cutvertex of a double-block candidate, in g's vertex ids."""
    sub, vs = induced_on_mask(g, mask_of(candidate))
    dec = structure.block_decomposition(sub)
    assert len(dec.cutvertices) == 1
    return vs[dec.cutvertices[0]]


def filter_candidates(
    family: ConflictGraph,
    g: Graph,
    skeleton_vertices: tuple[int, ...],
    c1: tuple[int, ...],
    c2: tuple[int, ...],
) -> ConflictGraph:
    """Keep the candidates compatible with a skeleton guess (S, C1, C2).

    Survivors are exactly: singleton/c-block candidates not adjacent to S;
    c-block candidates meeting S in one vertex that lies in C1; double-block
    candidates meeting S in one vertex that lies in C2 and is not the
    double-block's cutvertex.  Conflict edges among survivors are recomputed
    between the reduced sets (candidate minus S).
    """
    s_set = set(skeleton_vertices)
    if not set(c1) <= s_set or not set(c2) <= s_set:
        raise ValueError("C1 and C2 must be subsets of the skeleton")
    s_mask = mask_of(skeleton_vertices)
    c1_set, c2_set = set(c1), set(c2)

    kept: list[int] = []
    anchors: list[int | None] = []
    for i, cand in enumerate(family.candidates):
        cmask = mask_of(cand)
        origin = family.origins[i]
        inter = cmask & s_mask
        if origin in (SINGLETON, C_BLOCK) and not g.sets_adjacent(cmask, s_mask):
            kept.append(i)
            anchors.append(None)
            continue
        if bin(inter).count("1") != 1:
            continue
        anchor = inter.bit_length() - 1
        if origin == C_BLOCK and anchor in c1_set:
            kept.append(i)
            anchors.append(anchor)
        elif origin == DOUBLE_BLOCK and anchor in c2_set:
            if double_block_cutvertex(g, cand) != anchor:
                kept.append(i)
                anchors.append(anchor)

    reduced = [
        tuple(v for v in family.candidates[i] if v not in s_set) for i in kept
    ]
    red_masks = [mask_of(r) for r in reduced]
    return ConflictGraph(
        tuple(family.candidates[i] for i in kept),
        tuple(family.origins[i] for i in kept),
        tuple(family.weights[i] for i in kept),
        tuple(_conflict_edges(g, red_masks)),
        tuple(anchors),
        tuple(reduced),
    )
