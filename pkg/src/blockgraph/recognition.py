"""Membership tests for the graph classes the solver manipulates.

Covers biconnectivity, small-graph isomorphism, C-block graphs and odd
cacti, induced linear-forest containment, and the complexity-status table
for FVS/ECT/OCT on linear-forest-free classes.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import structure
from .errors import ParseError
from .graphs import (
    Graph,
    bits,
    cycle_graph,
    induced_on_mask,
    is_connected,
    mask_of,
    parse_graph,
    path_graph,
    vertex_tuple,
)


def is_biconnected(g: Graph) -> bool:
    """Connected, at least two vertices, and no single vertex disconnects it.

    Deliberately uses vertex-deletion probes rather than the articulation
    DFS so it can cross-check the block decomposition in tests.
    """
    if g.n < 2 or not is_connected(g):
        return False
    if g.n == 2:
        return g.m == 1
    for v in range(g.n):
        mask = g.full_mask() & ~(1 << v)
        if not _mask_connected(g, mask):
            return False
    return True


def _mask_connected(g: Graph, mask: int) -> bool:
    if mask == 0:
        return True
    start = (mask & -mask).bit_length() - 1
    seen = 1 << start
    stack = [start]
    while stack:
        v = stack.pop()
        fresh = g.adj_mask(v) & mask & ~seen
        seen |= fresh
        for u in bits(fresh):
            stack.append(u)
    return seen == mask


def is_cycle_graph(g: Graph) -> bool:
    return (
        g.n >= 3
        and g.m == g.n
        and all(g.degree(v) == 2 for v in range(g.n))
        and is_connected(g)
    )


# -- small-graph isomorphism ---------------------------------------------


def _invariant(g: Graph) -> tuple:
    degs = sorted(g.degree(v) for v in range(g.n))
    return (g.n, g.m, tuple(degs))


def are_isomorphic(g1: Graph, g2: Graph) -> bool:
    """Edge-preserving bijection test via backtracking; ignores weights.

    Intended for small graphs (block-sized); prunes on degree sequences and
    neighbour-degree multisets.
    """
    if _invariant(g1) != _invariant(g2):
        return False
    n = g1.n
    if n == 0:
        return True
    nbr_degs1 = [tuple(sorted(g1.degree(u) for u in g1.neighbors(v))) for v in range(n)]
    nbr_degs2 = [tuple(sorted(g2.degree(u) for u in g2.neighbors(v))) for v in range(n)]
    if sorted(nbr_degs1) != sorted(nbr_degs2):
        return False

    # map vertices of g1 in order of decreasing degree, preferring connectivity
    order = sorted(range(n), key=lambda v: (-g1.degree(v), v))
    mapping = [-1] * n
    used = [False] * n

    def extend(idx: int) -> bool:
        if idx == n:
            return True
        v = order[idx]
        for w in range(n):
            if used[w] or g1.degree(v) != g2.degree(w) or nbr_degs1[v] != nbr_degs2[w]:
                continue
            ok = True
            for prev in order[:idx]:
                if g1.adjacent(v, prev) != g2.adjacent(w, mapping[prev]):
                    ok = False
                    break
            if ok:
                mapping[v] = w
                used[w] = True
                if extend(idx + 1):
                    return True
                used[w] = False
                mapping[v] = -1
        return False

    return extend(0)


# -- block class specifications ------------------------------------------


class ComplexityStatus(enum.Enum):
    POLYNOMIAL = "polynomial"
    NP_COMPLETE = "np_complete"
    OPEN = "open"


@dataclass(frozen=True)
class BlockClassSpec:
    """The class of allowed blocks: a finite member list, or odd-cactus mode.

    In odd-cactus mode a block is allowed iff it is a single edge or an odd
    cycle; ``members`` is empty and ``d`` is None.  Finite specs keep
    pairwise non-isomorphic biconnected members and ``d`` = max member size.
    """

    members: tuple[Graph, ...]
    odd_cactus: bool
    d: int | None

    @classmethod
    def from_graphs(cls, graphs: Iterable[Graph]) -> "BlockClassSpec":
        kept: list[Graph] = []
        for g in graphs:
            if g.n < 2:
                raise ValueError("block-class members need at least 2 vertices")
            if not is_biconnected(g):
                raise ValueError(
                    f"block-class member on {g.n} vertices is not biconnected"
                )
            if not any(are_isomorphic(g, h) for h in kept):
                kept.append(g)
        if not kept:
            return cls((), False, None)
        kept.sort(key=lambda g: (g.n, g.m))
        return cls(tuple(kept), False, max(g.n for g in kept))

    @classmethod
    def odd_cactus_mode(cls) -> "BlockClassSpec":
        return cls((), True, None)

    @classmethod
    def forests(cls) -> "BlockClassSpec":
        return cls.from_graphs([path_graph(2)])

    def truncated(self, s: int) -> "BlockClassSpec":
        """Finite stand-in for odd-cactus mode on sP3-free inputs.

        An induced cycle in an sP3-free graph has at most 4s-1 vertices, so
        blocks beyond C_{4s-1} can never occur there.
        """
        if not self.odd_cactus:
            return self
        members = [path_graph(2)]
        members.extend(cycle_graph(k) for k in range(3, 4 * s, 2))
        return BlockClassSpec.from_graphs(members)

    def match_block(self, block: Graph) -> int | str | None:
        """Index of the isomorphic member, an odd-cactus tag, or None."""
        if self.odd_cactus:
            if block.n == 2 and block.m == 1:
                return "edge"
            if is_cycle_graph(block) and block.n % 2 == 1:
                return "odd-cycle"
            return None
        for i, member in enumerate(self.members):
            if are_isomorphic(block, member):
                return i
        return None

    def describe(self) -> str:
        if self.odd_cactus:
            return "odd-cactus"
        return "{" + ", ".join(
            f"n={g.n},m={g.m}" for g in self.members
        ) + "}"


def parse_block_class(text: str) -> BlockClassSpec:
    """Parse a block-class file: ``odd-cactus``, or graphs separated by ``%``."""
    stripped = text.strip()
    if stripped == "odd-cactus":
        return BlockClassSpec.odd_cactus_mode()
    chunks = [c for c in stripped.split("%") if c.strip()]
    if not chunks:
        raise ParseError("empty block-class specification")
    return BlockClassSpec.from_graphs([parse_graph(c) for c in chunks])


# -- C-block membership ----------------------------------------------------


@dataclass(frozen=True)
class CBlockCertificate:
    """Outcome of a C-block membership test.

    ``matches`` pairs each block's vertex set with the member it matched
    (member index, or ``edge``/``odd-cycle`` in odd-cactus mode);
    ``offending`` is the first block with no match, if any.
    """

    ok: bool
    matches: tuple[tuple[tuple[int, ...], int | str], ...]
    offending: tuple[int, ...] | None = None


def is_c_block_graph(g: Graph, spec: BlockClassSpec) -> CBlockCertificate:
    """True iff every block of every component matches the class.

    Isolated vertices are always allowed: an independent set is a valid
    C-block graph for every class, including the empty one.
    """
    dec = structure.block_decomposition(g)
    matches: list[tuple[tuple[int, ...], int | str]] = []
    for block in dec.blocks:
        sub, _ = induced_on_mask(g, mask_of(block))
        tag = spec.match_block(sub)
        if tag is None:
            return CBlockCertificate(False, tuple(matches), block)
        matches.append((block, tag))
    return CBlockCertificate(True, tuple(matches))


def has_even_cycle(g: Graph) -> bool:
    """True iff some (not necessarily induced) even cycle exists.

    Uses the block characterization: a graph has no even cycle exactly when
    every block is a single edge or an odd cycle.
    """
    dec = structure.block_decomposition(g)
    for block in dec.blocks:
        if len(block) == 2:
            continue
        sub, _ = induced_on_mask(g, mask_of(block))
        if not (is_cycle_graph(sub) and sub.n % 2 == 1):
            return True
    return False


# -- induced linear forests ------------------------------------------------


def normalize_pattern(pattern: Iterable[int]) -> tuple[int, ...]:
    parts = tuple(sorted(pattern, reverse=True))
    if not parts or any(p < 1 for p in parts):
        raise ValueError("pattern parts must be positive integers")
    return parts


def sp3_pattern(s: int) -> tuple[int, ...]:
    return (3,) * s


def _induced_paths(g: Graph, allowed: int, k: int):
    """Yield induced paths with k vertices inside the ``allowed`` mask."""
    if k == 1:
        for v in bits(allowed):
            yield (v,)
        return
    # grow simple paths; enforce induced-ness by forbidding neighbours of
    # earlier path vertices; dedupe directions via endpoint order
    def extend(path: list[int], blocked: int):
        if len(path) == k:
            if path[0] < path[-1]:
                yield tuple(path)
            return
        last = path[-1]
        for u in bits(g.adj_mask(last) & allowed & ~blocked):
            yield from extend(path + [u], blocked | g.adj_mask(path[-1]) | (1 << u))

    for v in bits(allowed):
        yield from extend([v], 1 << v)


def contains_induced_linear_forest(
    g: Graph, pattern: Iterable[int]
) -> tuple[bool, tuple[int, ...] | None]:
    """Does ``g`` contain the disjoint union of paths given by ``pattern``
    as an induced subgraph?  Returns (answer, witness vertex set).

    Places the longest part first, deletes the closed neighbourhood of each
    placed path, and recurses; components of an induced linear forest are
    pairwise non-adjacent, so this is exhaustive.
    """
    parts = normalize_pattern(pattern)
    total = sum(parts)
    if total > g.n:
        return False, None
    fail: set[tuple[int, int]] = set()

    def place(allowed: int, idx: int, acc: list[tuple[int, ...]]):
        if idx == len(parts):
            return acc
        if bin(allowed).count("1") < sum(parts[idx:]):
            return None
        key = (allowed, idx)
        if key in fail:
            return None
        for path in _induced_paths(g, allowed, parts[idx]):
            closed = mask_of(path)
            closed |= g.neighborhood_mask(closed)
            res = place(allowed & ~closed, idx + 1, acc + [path])
            if res is not None:
                return res
        fail.add(key)
        return None

    found = place(g.full_mask(), 0, [])
    if found is None:
        return False, None
    return True, vertex_tuple(v for path in found for v in path)


# -- complexity status table ------------------------------------------------


def _fits_in_path(pattern: Sequence[int], k: int) -> bool:
    """H is an induced subgraph of P_k iff its parts fit with gaps."""
    return sum(pattern) + len(pattern) - 1 <= k


def complexity_status(
    pattern: Iterable[int] | None, problem: str
) -> ComplexityStatus:
    """Known complexity of FVS/ECT/OCT on H-free graphs.

    ``pattern`` describes a linear forest H; ``None`` means H is not a
    linear forest, which is NP-complete for all three problems.
    """
    problem = problem.lower()
    if problem not in {"fvs", "ect", "oct"}:
        raise ValueError(f"unknown problem {problem!r}")
    if pattern is None:
        return ComplexityStatus.NP_COMPLETE
    parts = normalize_pattern(pattern)
    biggest = parts[0]

    if problem in {"fvs", "ect"}:
        if biggest <= 3 or _fits_in_path(parts, 5):
            return ComplexityStatus.POLYNOMIAL
        # anything else contains P1+P4 as an induced subgraph
        return ComplexityStatus.OPEN

    # OCT
    if len(parts) == 1 and biggest >= 6:
        return ComplexityStatus.NP_COMPLETE
    if biggest >= 5 and len(parts) >= 2 and parts[1] >= 2:
        return ComplexityStatus.NP_COMPLETE
    if parts == (4,):
        return ComplexityStatus.POLYNOMIAL
    if biggest <= 2:
        return ComplexityStatus.POLYNOMIAL
    if biggest <= 3 and parts.count(3) <= 1 and parts.count(2) == 0:
        return ComplexityStatus.POLYNOMIAL
    return ComplexityStatus.OPEN
