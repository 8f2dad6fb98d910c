"""Core immutable graph type, text I/O and basic queries.

Vertices are dense integers ``0..n-1``.  Each vertex carries a strictly
positive rational weight (default 1).  Graph values are immutable; derived
graphs are new values, so they are safe to share between workers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

from .errors import ParseError

ONE = Fraction(1)


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def vertex_tuple(vertices: Iterable[int]) -> tuple[int, ...]:
    """Canonical sorted, duplicate-free vertex set."""
    return tuple(sorted(set(vertices)))


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph with positive rational vertex weights."""

    n: int
    edges: tuple[tuple[int, int], ...]
    weights: tuple[Fraction, ...]
    _adj: tuple[frozenset[int], ...] = field(
        init=False, compare=False, repr=False, hash=False
    )
    _adj_mask: tuple[int, ...] = field(
        init=False, compare=False, repr=False, hash=False
    )

    def __post_init__(self) -> None:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "_adj", tuple(frozenset(a) for a in adj))
        object.__setattr__(self, "_adj_mask", tuple(mask_of(a) for a in adj))

    @classmethod
    def build(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]] = (),
        weights: Iterable[Fraction | int] | None = None,
    ) -> "Graph":
        """Validate and normalize raw data into a Graph."""
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        norm: set[tuple[int, int]] = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            e = (u, v) if u < v else (v, u)
            if e in norm:
                raise ValueError(f"duplicate edge ({e[0]},{e[1]})")
            norm.add(e)
        if weights is None:
            w = (ONE,) * n
        else:
            w = tuple(Fraction(x) for x in weights)
            if len(w) != n:
                raise ValueError(f"expected {n} weights, got {len(w)}")
            for i, x in enumerate(w):
                if x <= 0:
                    raise ValueError(f"weight of vertex {i} is not positive")
        return cls(n, tuple(sorted(norm)), w)

    # -- basic queries -------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def adj_mask(self, v: int) -> int:
        return self._adj_mask[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def adjacent(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def weight(self, v: int) -> Fraction:
        return self.weights[v]

    def weight_of(self, vertices: Iterable[int]) -> Fraction:
        return sum((self.weights[v] for v in vertices), Fraction(0))

    def neighborhood_mask(self, mask: int) -> int:
        """Open neighbourhood of the vertex set ``mask``, as a mask."""
        out = 0
        for v in bits(mask):
            out |= self._adj_mask[v]
        return out & ~mask

    def sets_adjacent(self, mask_a: int, mask_b: int) -> bool:
        """True iff the two vertex sets intersect or are joined by an edge."""
        if mask_a & mask_b:
            return True
        return bool(self.neighborhood_mask(mask_a) & mask_b)

    def full_mask(self) -> int:
        return (1 << self.n) - 1


# -- constructors for common small graphs (used widely in tests) --------


def path_graph(k: int) -> Graph:
    return Graph.build(k, [(i, i + 1) for i in range(k - 1)])


def cycle_graph(k: int) -> Graph:
    if k < 3:
        raise ValueError("cycles need at least 3 vertices")
    return Graph.build(k, [(i, (i + 1) % k) for i in range(k)])


def complete_graph(k: int) -> Graph:
    return Graph.build(k, list(itertools.combinations(range(k), 2)))


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with the centre at vertex 0."""
    return Graph.build(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def disjoint_union(a: Graph, b: Graph) -> Graph:
    edges = list(a.edges) + [(u + a.n, v + a.n) for u, v in b.edges]
    return Graph.build(a.n + b.n, edges, a.weights + b.weights)


# -- text format ---------------------------------------------------------


def _parse_weight(token: str, line: int) -> Fraction:
    try:
        if "/" in token:
            num, den = token.split("/", 1)
            w = Fraction(int(num), int(den))
        else:
            w = Fraction(int(token))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad weight {token!r}: {exc}", line) from None
    if w <= 0:
        raise ParseError(f"non-positive weight {token!r}", line)
    return w


def parse_graph(text: str) -> Graph:
    """Parse the graph text format.

    Line 1 is ``n m``; an optional next line ``w w0 w1 ... w_{n-1}`` gives
    rational weights (``p/q`` or integers); then ``m`` lines ``u v`` with
    ``0 <= u < v < n``.  Lines starting with ``#`` are comments.
    """
    lines = [
        (i + 1, line.strip())
        for i, line in enumerate(text.split("\n"))
        if line.strip() and not line.strip().startswith("#")
    ]
    if not lines:
        raise ParseError("empty input: missing 'n m' header")
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2:
        raise ParseError(f"header must be 'n m', got {header!r}", lineno)
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError(f"header must be two integers, got {header!r}", lineno) from None
    if n < 0 or m < 0:
        raise ParseError("vertex and edge counts must be non-negative", lineno)

    rest = lines[1:]
    weights: tuple[Fraction, ...] | None = None
    if rest and rest[0][1].split()[0] == "w":
        wline, wtext = rest[0]
        tokens = wtext.split()[1:]
        if len(tokens) != n:
            raise ParseError(f"weight line has {len(tokens)} entries, expected {n}", wline)
        weights = tuple(_parse_weight(t, wline) for t in tokens)
        rest = rest[1:]

    if len(rest) != m:
        where = rest[m][0] if len(rest) > m else lineno
        raise ParseError(f"expected {m} edge lines, found {len(rest)}", where)

    seen: set[tuple[int, int]] = set()
    edges: list[tuple[int, int]] = []
    for eline, etext in rest:
        parts = etext.split()
        if len(parts) != 2:
            raise ParseError(f"edge line must be 'u v', got {etext!r}", eline)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"edge endpoints must be integers, got {etext!r}", eline) from None
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"endpoint out of range in edge ({u},{v})", eline)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", eline)
        if u > v:
            raise ParseError(f"edge ({u},{v}) not in increasing order", eline)
        if (u, v) in seen:
            raise ParseError(f"duplicate edge ({u},{v})", eline)
        seen.add((u, v))
        edges.append((u, v))
    return Graph.build(n, edges, weights)


def format_graph(g: Graph) -> str:
    """Serialize a graph in the text format (inverse of :func:`parse_graph`)."""
    out = [f"{g.n} {g.m}"]
    if any(w != ONE for w in g.weights):
        out.append("w " + " ".join(str(w) for w in g.weights))
    out.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(out) + "\n"


# -- operations ----------------------------------------------------------


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph on ``vertices`` plus the old->new relabelling map."""
    vs = vertex_tuple(vertices)
    for v in vs:
        if not (0 <= v < g.n):
            raise ValueError(f"vertex {v} out of range 0..{g.n - 1}")
    relabel = {v: i for i, v in enumerate(vs)}
    edges = [
        (relabel[u], relabel[v])
        for u, v in g.edges
        if u in relabel and v in relabel
    ]
    weights = tuple(g.weights[v] for v in vs)
    return Graph.build(len(vs), edges, weights), relabel


def induced_on_mask(g: Graph, mask: int) -> tuple[Graph, tuple[int, ...]]:
    """Fast variant of :func:`induced_subgraph`: returns (graph, new->old ids)."""
    vs = tuple(bits(mask))
    relabel = {v: i for i, v in enumerate(vs)}
    edges = [
        (relabel[u], relabel[v])
        for u, v in g.edges
        if (mask >> u) & 1 and (mask >> v) & 1
    ]
    weights = tuple(g.weights[v] for v in vs)
    return Graph(len(vs), tuple(edges), weights), vs


def connected_components(g: Graph) -> list[tuple[int, ...]]:
    """Partition of the vertex set into components, sorted by minimum element."""
    seen = [False] * g.n
    parts: list[tuple[int, ...]] = []
    for start in range(g.n):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        comp = []
        while stack:
            v = stack.pop()
            comp.append(v)
            for u in g.neighbors(v):
                if not seen[u]:
                    seen[u] = True
                    stack.append(u)
        parts.append(tuple(sorted(comp)))
    return parts


def component_masks(g: Graph) -> list[int]:
    return [mask_of(part) for part in connected_components(g)]


def is_connected(g: Graph) -> bool:
    return len(connected_components(g)) <= 1


def girth(g: Graph) -> int | None:
    """Length of a shortest cycle, or None for acyclic graphs.

    Runs one BFS per root; the minimum over roots of the shortest cycle
    detected through each root is the girth.
    """
    best: int | None = None
    for root in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[root] = 0
        queue = [root]
        i = 0
        while i < len(queue):
            v = queue[i]
            i += 1
            if best is not None and dist[v] * 2 >= best:
                break
            for u in g.neighbors(v):
                if dist[u] == -1:
                    dist[u] = dist[v] + 1
                    parent[u] = v
                    queue.append(u)
                elif u != parent[v]:
                    cand = dist[v] + dist[u] + 1
                    if best is None or cand < best:
                        best = cand
    return best
