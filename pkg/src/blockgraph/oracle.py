"""Brute-force ground truth for every optimization problem in scope.

These stay deliberately dumb: subset scans and exhaustive enumeration,
sharing no search logic with the solver they validate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import recognition
from .errors import SizeCapError
from .graphs import Graph, bits, induced_on_mask, is_connected, mask_of, vertex_tuple

SUBSET_SCAN_CAP = 20
OCF_CAP = 14
STEINER_CAP = 16


@dataclass(frozen=True)
class OracleReport:
    optimum: Fraction
    witness: tuple[int, ...]
    optima_count: int | None = None


def _check_cap(n: int, cap: int, what: str) -> None:
    if n > cap:
        raise SizeCapError(f"{what} is capped at {cap} vertices, got {n}")


def brute_max_c_block(g: Graph, spec: recognition.BlockClassSpec) -> OracleReport:
    """Exact optimum by scanning all 2^n vertex subsets."""
    _check_cap(g.n, SUBSET_SCAN_CAP, "subset scan")
    best = Fraction(0)
    best_set: tuple[int, ...] = ()
    count = 1  # the empty set is always feasible
    for mask in range(1, 1 << g.n):
        sub, vs = induced_on_mask(g, mask)
        if spec.odd_cactus:
            ok = not recognition.has_even_cycle(sub)
        else:
            ok = recognition.is_c_block_graph(sub, spec).ok
        if not ok:
            continue
        weight = g.weight_of(vs)
        if weight > best:
            best, best_set, count = weight, vs, 1
        elif weight == best:
            count += 1
            if vs < best_set or not best_set:
                best_set = vs
    return OracleReport(best, best_set, count)


def _is_acyclic(g: Graph, mask: int) -> bool:
    """Union-find cycle test on the induced edge set; independent of the
    block machinery."""
    parent = {v: v for v in bits(mask)}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edges:
        if (mask >> u) & 1 and (mask >> v) & 1:
            ru, rv = find(u), find(v)
            if ru == rv:
                return False
            parent[ru] = rv
    return True


def enumerate_simple_cycles(g: Graph, cap: int | None = 200_000):
    """Yield all simple cycles as vertex tuples, each exactly once.

    Canonical form: the cycle starts at its minimum vertex and its second
    vertex is smaller than its last.
    """
    count = 0
    for root in range(g.n):
        allowed = mask_of(range(root, g.n))

        def extend(path: list[int], blocked: int):
            nonlocal count
            last = path[-1]
            for u in bits(g.adj_mask(last) & allowed & ~blocked):
                yield from extend(path + [u], blocked | (1 << u))
            if len(path) >= 3 and g.adjacent(last, root) and path[1] < path[-1]:
                count += 1
                if cap is not None and count > cap:
                    raise SizeCapError(f"cycle enumeration exceeded {cap} cycles")
                yield tuple(path)

        yield from extend([root], 1 << root)


def _has_even_cycle_exhaustive(g: Graph) -> bool:
    for cycle in enumerate_simple_cycles(g):
        if len(cycle) % 2 == 0:
            return True
    return False


def brute_min_fvs(g: Graph) -> OracleReport:
    """Minimum feedback vertex set via the complement scan, cross-checked by
    a direct union-find acyclicity scan."""
    _check_cap(g.n, SUBSET_SCAN_CAP, "subset scan")
    report = brute_max_c_block(g, recognition.BlockClassSpec.forests())
    direct_best = None
    for mask in range(1 << g.n):
        if _is_acyclic(g, mask):
            size = g.n - bin(mask).count("1")
            if direct_best is None or size < direct_best:
                direct_best = size
    complement = tuple(v for v in range(g.n) if v not in set(report.witness))
    assert direct_best == len(complement), "FVS cross-check failed"
    return OracleReport(Fraction(len(complement)), complement)


def brute_min_ect(g: Graph) -> OracleReport:
    """Minimum even cycle transversal, cross-checked by exhaustive cycle
    enumeration on the kept set."""
    _check_cap(g.n, SUBSET_SCAN_CAP, "subset scan")
    report = brute_max_c_block(g, recognition.BlockClassSpec.odd_cactus_mode())
    complement = tuple(v for v in range(g.n) if v not in set(report.witness))
    sub, _ = induced_on_mask(g, mask_of(report.witness))
    assert not _has_even_cycle_exhaustive(sub), "ECT witness keeps an even cycle"
    return OracleReport(Fraction(len(complement)), complement)


def brute_min_ect_via_cycles(g: Graph, cycle_cap: int = 200_000) -> OracleReport:
    """Minimum even cycle transversal as an exact hitting-set computation.

    Enumerates every simple cycle, keeps the even ones, and finds a minimum
    vertex set meeting all of them by branch and bound.  Usable beyond the
    subset-scan cap whenever the cycle count stays small (e.g. subdivided
    graphs).
    """
    even_cycles = [
        frozenset(c) for c in enumerate_simple_cycles(g, cycle_cap) if len(c) % 2 == 0
    ]
    if not even_cycles:
        return OracleReport(Fraction(0), ())
    best: list[tuple[int, ...] | None] = [None]

    def search(chosen: set[int]):
        if best[0] is not None and len(chosen) >= len(best[0]):
            return
        for cyc in even_cycles:
            if not (cyc & chosen):
                for v in sorted(cyc):
                    chosen.add(v)
                    search(chosen)
                    chosen.discard(v)
                return
        best[0] = vertex_tuple(chosen)

    search(set())
    assert best[0] is not None
    return OracleReport(Fraction(len(best[0])), best[0])


def brute_odd_cycle_factor(
    g: Graph,
) -> tuple[bool, tuple[tuple[int, ...], ...] | None]:
    """Can the vertex set be partitioned into vertex-disjoint odd cycles?"""
    _check_cap(g.n, OCF_CAP, "odd cycle factor search")
    if g.n == 0:
        return True, ()
    odd_cycles = [c for c in enumerate_simple_cycles(g) if len(c) % 2 == 1]
    by_vertex: dict[int, list[tuple[tuple[int, ...], int]]] = {
        v: [] for v in range(g.n)
    }
    for c in odd_cycles:
        cmask = mask_of(c)
        for v in c:
            by_vertex[v].append((c, cmask))

    full = g.full_mask()
    dead: set[int] = set()

    def cover(mask: int, acc: list[tuple[int, ...]]):
        if mask == full:
            return tuple(acc)
        if mask in dead:
            return None
        v = next(i for i in range(g.n) if not (mask >> i) & 1)
        for c, cmask in by_vertex[v]:
            if cmask & mask:
                continue
            res = cover(mask | cmask, acc + [c])
            if res is not None:
                return res
        dead.add(mask)
        return None

    witness = cover(0, [])
    if witness is None:
        return False, None
    return True, witness


def brute_steiner_tree(g: Graph, terminals: tuple[int, ...]) -> OracleReport:
    """Vertex-minimum connected subgraph containing the terminals, by a
    subset scan over supersets in (size, lex) order."""
    _check_cap(g.n, STEINER_CAP, "Steiner subset scan")
    terms = vertex_tuple(terminals)
    if not terms:
        raise ValueError("empty terminal set")
    if not is_connected(g):
        raise ValueError("Steiner oracle expects a connected graph")
    others = [v for v in range(g.n) if v not in set(terms)]
    for size in range(len(terms), g.n + 1):
        for extra in itertools.combinations(others, size - len(terms)):
            candidate = vertex_tuple(terms + extra)
            sub, _ = induced_on_mask(g, mask_of(candidate))
            if is_connected(sub):
                return OracleReport(Fraction(size), candidate)
    raise AssertionError("unreachable: connected graph always has a spanning set")
