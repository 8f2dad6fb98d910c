"""Exact maximum-weight independent set.

Branch and bound on a maximum-degree vertex with component decomposition,
a greedy lower bound and the weight-sum upper bound.  Exact rational
arithmetic throughout; ties break to the lexicographically smallest chosen
index set, which makes results reproducible across runs and worker counts.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .graphs import Graph, bits


@dataclass(frozen=True)
class MwisResult:
    chosen: tuple[int, ...]
    weight: Fraction


def _greedy(order: Sequence[int], closed: Sequence[int], weights: Sequence[Fraction]):
    used = 0
    picked = []
    for v in order:
        if not (used >> v) & 1:
            picked.append(v)
            used |= closed[v]
    return picked


def _solve_component(
    comp_mask: int, closed: Sequence[int], weights: Sequence[Fraction]
) -> tuple[Fraction, tuple[int, ...]]:
    verts = list(bits(comp_mask))
    order = sorted(verts, key=lambda v: (-weights[v], v))
    seed = _greedy(order, closed, weights)
    best_w = sum((weights[v] for v in seed), Fraction(0))
    best_set = tuple(sorted(seed))

    def total(mask: int) -> Fraction:
        return sum((weights[v] for v in bits(mask)), Fraction(0))

    def branch(mask: int, cur_w: Fraction, cur: list[int]):
        nonlocal best_w, best_set
        # vertices isolated within the current mask always belong to an optimum
        while True:
            auto = [v for v in bits(mask) if not (closed[v] & mask & ~(1 << v))]
            if not auto:
                break
            for v in auto:
                cur.append(v)
                cur_w += weights[v]
                mask &= ~(1 << v)
        if mask == 0:
            cand = tuple(sorted(cur))
            if cur_w > best_w or (cur_w == best_w and cand < best_set):
                best_w, best_set = cur_w, cand
            return
        if cur_w + total(mask) < best_w:
            return
        v = max(bits(mask), key=lambda u: (bin(closed[u] & mask).count("1"), -u))
        branch(mask & ~closed[v], cur_w + weights[v], cur + [v])
        branch(mask & ~(1 << v), cur_w, cur)

    branch(comp_mask, Fraction(0), [])
    return best_w, best_set


def max_weight_independent_set(obj, weights: Sequence[Fraction] | None = None) -> MwisResult:
    """Solve MWIS on a Graph or on a conflict graph (anything exposing
    ``candidates`` and ``conflict_masks``).  ``weights`` overrides the
    object's own weights; all weights must be positive."""
    if isinstance(obj, Graph):
        n = obj.n
        closed = [obj.adj_mask(v) | (1 << v) for v in range(n)]
        w = list(weights if weights is not None else obj.weights)
    else:
        n = len(obj)
        adj = obj.conflict_masks()
        closed = [adj[v] | (1 << v) for v in range(n)]
        w = list(weights if weights is not None else obj.weights)
    if any(x <= 0 for x in w):
        raise ValueError("MWIS requires positive weights")
    if n == 0:
        return MwisResult((), Fraction(0))
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * n + 100))

    remaining = (1 << n) - 1
    chosen: list[int] = []
    weight = Fraction(0)
    while remaining:
        start = (remaining & -remaining).bit_length() - 1
        comp = 1 << start
        frontier = [start]
        while frontier:
            v = frontier.pop()
            fresh = closed[v] & remaining & ~comp
            comp |= fresh
            frontier.extend(bits(fresh))
        comp_w, comp_set = _solve_component(comp, closed, w)
        chosen.extend(comp_set)
        weight += comp_w
        remaining &= ~comp
    return MwisResult(tuple(sorted(chosen)), weight)
