"""Deterministic instance generators for validation sweeps.

All generators take a ``random.Random`` so suites are reproducible from a
single seed.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Iterator

from .graphs import Graph, is_connected
from .recognition import BlockClassSpec, contains_induced_linear_forest


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.build(n, edges)


def random_weights(rng: random.Random, g: Graph, max_num: int = 9, max_den: int = 4) -> Graph:
    weights = [
        Fraction(rng.randint(1, max_num), rng.randint(1, max_den)) for _ in range(g.n)
    ]
    return Graph.build(g.n, g.edges, weights)


def random_weighted_graph(rng: random.Random, n: int, p: float) -> Graph:
    return random_weights(rng, random_graph(rng, n, p))


def random_connected_graph(
    rng: random.Random, n: int, max_edges: int | None = None
) -> Graph:
    """Rejection-sample a connected graph, optionally bounding the edge count."""
    while True:
        g = random_graph(rng, n, rng.uniform(0.3, 0.9))
        if not is_connected(g) or g.n == 0:
            continue
        if max_edges is not None and g.m > max_edges:
            continue
        return g


def is_sp3_free(g: Graph, s: int) -> bool:
    found, _ = contains_induced_linear_forest(g, (3,) * s)
    return not found


def partitions(k: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """All integer partitions of k, parts non-increasing."""
    if k == 0:
        yield ()
        return
    cap = largest if largest is not None else k
    for first in range(min(k, cap), 0, -1):
        for rest in partitions(k - first, first):
            yield (first,) + rest


def all_cluster_graphs(max_n: int, rng: random.Random | None = None) -> list[Graph]:
    """Every disjoint union of cliques on 1..max_n vertices, one per clique
    size multiset; random weights when an rng is supplied."""
    out = []
    for n in range(1, max_n + 1):
        for sizes in partitions(n):
            edges = []
            offset = 0
            for size in sizes:
                edges.extend(
                    (offset + a, offset + b)
                    for a, b in itertools.combinations(range(size), 2)
                )
                offset += size
            g = Graph.build(n, edges)
            out.append(random_weights(rng, g) if rng is not None else g)
    return out


def random_c_block_graph(
    rng: random.Random,
    spec: BlockClassSpec,
    max_blocks: int = 6,
    components: tuple[int, int] = (1, 2),
) -> Graph:
    """Grow a graph whose blocks are drawn from the class members.

    Each component starts from one member block; later blocks are glued at
    a random existing vertex.  Labels are shuffled afterwards so rooting
    choices vary across samples.
    """
    assert spec.members, "need a finite class with members"
    edges: list[tuple[int, int]] = []
    n = 0
    for _ in range(rng.randint(*components)):
        comp_vertices: list[int] = []
        for b in range(rng.randint(1, max_blocks)):
            member = rng.choice(spec.members)
            if b == 0:
                fresh = list(range(n, n + member.n))
                n += member.n
                local = fresh
            else:
                anchor = rng.choice(comp_vertices)
                fresh = list(range(n, n + member.n - 1))
                n += member.n - 1
                glue_at = rng.randrange(member.n)
                local = fresh[:glue_at] + [anchor] + fresh[glue_at:]
            comp_vertices.extend(v for v in local if v not in comp_vertices)
            edges.extend(
                (min(local[u], local[v]), max(local[u], local[v]))
                for u, v in member.edges
            )
    perm = list(range(n))
    rng.shuffle(perm)
    return Graph.build(n, [(min(perm[u], perm[v]), max(perm[u], perm[v])) for u, v in edges])


def odd_cycle_factor_instance(rng: random.Random, max_n: int = 6) -> Graph:
    """Connected graph that has an odd cycle factor by construction:
    disjoint odd cycles plus random extra chords."""
    choices = [(3,), (5,), (3, 3)] if max_n >= 6 else [(3,), (5,)]
    sizes = rng.choice([s for s in choices if sum(s) <= max_n])
    edges = []
    offset = 0
    comps = []
    for size in sizes:
        comps.append(list(range(offset, offset + size)))
        edges.extend(
            (offset + i, offset + (i + 1) % size) for i in range(size)
        )
        offset += size
    n = offset
    edges = [tuple(sorted(e)) for e in edges]
    pool = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if (u, v) not in set(edges)
    ]
    rng.shuffle(pool)
    extra = rng.randint(1 if len(comps) > 1 else 0, min(3, len(pool)))
    for e in pool[:extra]:
        edges.append(e)
    g = Graph.build(n, edges)
    if not is_connected(g):
        # join the components with one more chord
        for e in pool[extra:]:
            g2 = Graph.build(n, edges + [e])
            if is_connected(g2):
                return g2
    return g
