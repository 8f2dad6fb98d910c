"""Hardness-construction generators: odd-cycle-factor to ECT via line
graphs, and edge subdivision for girth amplification.

These build instances; their semantic contracts (the if-and-only-ifs) are
validated by the test harness against the brute-force oracles, never
assumed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Graph


@dataclass(frozen=True)
class ReductionInstance:
    """A produced instance together with its construction bookkeeping.

    For line graphs, ``vertex_map[i]`` is the source edge that became
    produced-vertex ``i``.  For subdivisions, ``path_map[e]`` lists the new
    internal vertices of source edge ``e`` in path order.  ``budget`` is
    the transversal budget of the reduction (m - n for odd cycle factor).
    """

    source: Graph
    produced: Graph
    budget: int | None = None
    vertex_map: tuple[tuple[int, int], ...] | None = None
    path_map: dict[tuple[int, int], tuple[int, ...]] | None = None


def line_graph(g: Graph) -> tuple[Graph, tuple[tuple[int, int], ...]]:
    """One produced vertex per edge; adjacency iff the edges share an end."""
    edges = list(g.edges)
    l_edges = [
        (i, j)
        for i in range(len(edges))
        for j in range(i + 1, len(edges))
        if set(edges[i]) & set(edges[j])
    ]
    return Graph.build(len(edges), l_edges), tuple(edges)


def ocf_to_ect(g: Graph) -> ReductionInstance:
    """Line-graph instance whose ECT budget is m - n.

    Contract (validated in tests): g has an odd cycle factor iff the
    produced graph has an even cycle transversal of size at most m - n.
    """
    produced, vmap = line_graph(g)
    return ReductionInstance(g, produced, budget=g.m - g.n, vertex_map=vmap)


def subdivide(g: Graph, t: int) -> ReductionInstance:
    """Replace every edge by a path with ``t`` internal vertices.

    New vertices are appended after the originals, edge by edge in sorted
    order, so the construction is deterministic.  Subdividing an even
    number of times preserves every cycle's parity.
    """
    if t < 0:
        raise ValueError("subdivision count must be non-negative")
    edges: list[tuple[int, int]] = []
    path_map: dict[tuple[int, int], tuple[int, ...]] = {}
    nxt = g.n
    for u, v in g.edges:
        internal = tuple(range(nxt, nxt + t))
        nxt += t
        path_map[(u, v)] = internal
        chain = [u, *internal, v]
        edges.extend(
            (min(a, b), max(a, b)) for a, b in zip(chain, chain[1:])
        )
    produced = Graph.build(nxt, edges, list(g.weights) + [1] * (nxt - g.n))
    return ReductionInstance(g, produced, path_map=path_map)
