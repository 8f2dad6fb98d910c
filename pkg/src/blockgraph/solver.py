"""Exact solver for maximum-weight induced C-block subgraphs of sP3-free
graphs, via skeleton guessing and a weighted independent-set completion.

Soundness and completeness are split: every assembled solution is
re-validated against the block-class recognizer, and the guess stream
covers, for every optimal solution, the skeleton/terminal triple of its
non-trivial part under at least one rooting of the block-cut forest.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from . import blob, mwis, recognition, structure
from .errors import BudgetExceededError, ClassViolationError
from .graphs import (
    Graph,
    bits,
    connected_components,
    induced_on_mask,
    mask_of,
    vertex_tuple,
)
from .recognition import BlockClassSpec, CBlockCertificate

DEFAULT_BUDGET = 1 << 22
BUDGET_ENV = "BG_BUDGET"


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else DEFAULT_BUDGET


@dataclass(frozen=True)
class ProblemSpec:
    """Block class plus the forbidden-pattern parameter s (sP3-free inputs)."""

    block_class: BlockClassSpec
    s: int

    def __post_init__(self) -> None:
        if self.s < 1:
            raise ValueError("s must be at least 1")

    def effective_class(self) -> BlockClassSpec:
        """Finite class actually used by the solver.

        Odd-cactus mode is truncated to edges plus odd cycles up to
        C_{4s-1}: longer induced cycles cannot occur in an sP3-free graph.
        """
        return self.block_class.truncated(self.s)

    def terminal_bound(self) -> int:
        d = self.effective_class().d or 0
        return (2 * d + 1) * (self.s - 1)


@dataclass(frozen=True)
class SkeletonGuess:
    """One branch of the guessing phase: skeleton vertices S plus the
    anchor sets C1 (pendant-block terminals) and C2 (double-block
    terminals).  ``blocks`` records the block structure of G[S]."""

    s_vertices: tuple[int, ...]
    c1: tuple[int, ...]
    c2: tuple[int, ...]
    blocks: tuple[tuple[int, ...], ...] = ()

    def backbone_forest(
        self, g: Graph
    ) -> tuple[tuple[int, ...], tuple[tuple[int, int], ...]]:
        """Minimum Steiner forest connecting the anchors inside each
        component of G[S]; annotation only, not used by the search."""
        if not self.s_vertices:
            return (), ()
        sub, vs = induced_on_mask(g, mask_of(self.s_vertices))
        anchors = set(self.c1) | set(self.c2)
        verts: list[int] = []
        edges: list[tuple[int, int]] = []
        for comp in connected_components(sub):
            local_terms = tuple(i for i in comp if vs[i] in anchors)
            if not local_terms:
                continue
            comp_graph, comp_vs = induced_on_mask(sub, mask_of(comp))
            terms2 = tuple(comp_vs.index(i) for i in local_terms)
            tree_vs, tree_edges = structure.backbone(comp_graph, terms2)
            verts.extend(vs[comp_vs[i]] for i in tree_vs)
            edges.extend(
                (
                    min(vs[comp_vs[a]], vs[comp_vs[b]]),
                    max(vs[comp_vs[a]], vs[comp_vs[b]]),
                )
                for a, b in tree_edges
            )
        return vertex_tuple(verts), tuple(sorted(edges))


@dataclass(frozen=True)
class SolutionCandidate:
    """A validated solution: vertex set, exact weight, and the per-block
    class-membership certificate of the induced subgraph."""

    vertices: tuple[int, ...]
    weight: Fraction
    certificate: CBlockCertificate


@dataclass(frozen=True)
class SolveStats:
    branches_explored: int


def check_sp3_free(g: Graph, s: int) -> None:
    found, witness = recognition.contains_induced_linear_forest(
        g, recognition.sp3_pattern(s)
    )
    if found:
        raise ClassViolationError(
            f"input contains an induced {s}P3", witness or ()
        )


def _c_block_subset_masks(
    g: Graph, spec_class: BlockClassSpec, budget: int
) -> list[int]:
    """Masks S (including 0) whose induced subgraph is a C-block graph,
    in lexicographic vertex-set order."""
    if g.n > 0 and (1 << g.n) > budget:
        raise BudgetExceededError(
            f"skeleton enumeration needs {1 << g.n} branches, budget is {budget}"
        )
    masks = []
    for mask in range(1 << g.n):
        sub, _ = induced_on_mask(g, mask)
        if recognition.is_c_block_graph(sub, spec_class).ok:
            masks.append(mask)
    masks.sort(key=lambda m: tuple(bits(m)))
    return masks


def enumerate_skeleton_guesses(
    g: Graph, spec: ProblemSpec, budget: int | None = None
) -> Iterator[SkeletonGuess]:
    """Yield every skeleton-guess triple (S, C1, C2), empty guess first.

    S ranges over the vertex sets inducing a C-block graph; C1 and C2 range
    over subsets of S whose union is non-empty and within the terminal
    bound (2d+1)(s-1).  For s = 1 the bound is zero, so the stream is
    exactly the empty guess.  For every induced C-block subgraph F of g and
    every rooting of the block-cut forest of F's non-trivial part, the
    stream contains the corresponding (skeleton, type-1, type-2) triple.
    """
    yield SkeletonGuess((), (), (), ())
    tmax = spec.terminal_bound()
    if tmax == 0:
        return
    eff = spec.effective_class()
    for mask in _c_block_subset_masks(g, eff, budget or default_budget()):
        if mask == 0:
            continue
        s_vertices = tuple(bits(mask))
        sub, _ = induced_on_mask(g, mask)
        dec = structure.block_decomposition(sub)
        blocks = tuple(
            tuple(s_vertices[i] for i in block) for block in dec.blocks
        )
        for c1, c2 in _anchor_assignments(s_vertices, tmax):
            yield SkeletonGuess(s_vertices, c1, c2, blocks)


def _anchor_assignments(
    s_vertices: tuple[int, ...], tmax: int
) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All (C1, C2) pairs with 1 <= |C1 ∪ C2| <= tmax, in lex order."""
    n = len(s_vertices)

    def rec(idx: int, c1: list[int], c2: list[int], used: int):
        if idx == n:
            if used:
                yield tuple(c1), tuple(c2)
            return
        v = s_vertices[idx]
        yield from rec(idx + 1, c1, c2, used)
        if used < tmax:
            for in1, in2 in ((True, False), (False, True), (True, True)):
                if in1:
                    c1.append(v)
                if in2:
                    c2.append(v)
                yield from rec(idx + 1, c1, c2, used + 1)
                if in1:
                    c1.pop()
                if in2:
                    c2.pop()

    yield from rec(0, [], [], 0)


def complete(
    g: Graph,
    spec: ProblemSpec,
    guess: SkeletonGuess,
    family: blob.ConflictGraph | None = None,
) -> SolutionCandidate | None:
    """Extend a skeleton guess to a full solution, or None if infeasible.

    Filters the candidate family against (S, C1, C2), drops anchored
    candidates with stray adjacency to the skeleton (their body must touch
    S only at the anchor), solves MWIS over the reduced sets with reduced
    weights, and validates the assembled vertex set.
    """
    eff = spec.effective_class()
    if family is None:
        family = blob.candidate_family(g, eff)
    filtered = blob.filter_candidates(
        family, g, guess.s_vertices, guess.c1, guess.c2
    )
    s_mask = mask_of(guess.s_vertices)

    keep: list[int] = []
    for i in range(len(filtered)):
        anchor = filtered.anchors[i]
        if anchor is None:
            keep.append(i)
            continue
        body = mask_of(filtered.reduced[i])
        stray = (g.neighborhood_mask(body) | body) & (s_mask & ~(1 << anchor))
        if not stray:
            keep.append(i)

    reduced_sets = [filtered.reduced[i] for i in keep]
    red_masks = [mask_of(r) for r in reduced_sets]
    weights = [g.weight_of(r) for r in reduced_sets]
    closed = [g.neighborhood_mask(m) | m for m in red_masks]
    conflicts: list[tuple[int, int]] = [
        (a, b)
        for a in range(len(keep))
        for b in range(a + 1, len(keep))
        if closed[a] & red_masks[b]
    ]
    instance = blob.ConflictGraph(
        tuple(reduced_sets),
        tuple(filtered.origins[i] for i in keep),
        tuple(weights),
        tuple(conflicts),
    )
    result = mwis.max_weight_independent_set(instance) if keep else mwis.MwisResult((), Fraction(0))

    x_mask = s_mask
    for idx in result.chosen:
        x_mask |= red_masks[idx]
    x_vertices = tuple(bits(x_mask))
    sub, vs = induced_on_mask(g, x_mask)
    cert = recognition.is_c_block_graph(sub, eff)
    if not cert.ok:
        return None
    relabeled = CBlockCertificate(
        True,
        tuple(
            (tuple(vs[i] for i in block), tag) for block, tag in cert.matches
        ),
    )
    return SolutionCandidate(x_vertices, g.weight_of(x_vertices), relabeled)


def _better(a: SolutionCandidate, b: SolutionCandidate | None) -> bool:
    if b is None:
        return True
    if a.weight != b.weight:
        return a.weight > b.weight
    return a.vertices < b.vertices


def solve_with_stats(
    g: Graph, spec: ProblemSpec, jobs: int = 1, budget: int | None = None
) -> tuple[SolutionCandidate, SolveStats]:
    """Maximum-weight induced C-block subgraph; raises ClassViolationError
    for inputs that are not sP3-free.

    Processes one completion per candidate skeleton set S with anchors
    C1 = C2 = S: for fixed S the filter is monotone in (C1, C2) and every
    assembly is validated, so this dominates all (C1, C2) sub-guesses of
    the stream without affecting the optimum.
    """
    check_sp3_free(g, spec.s)
    budget = budget if budget is not None else default_budget()
    eff = spec.effective_class()
    family = blob.candidate_family(g, eff)

    if spec.terminal_bound() == 0:
        masks = [0]
    else:
        masks = _c_block_subset_masks(g, eff, budget)

    def run_one(mask: int) -> SolutionCandidate | None:
        s_vertices = tuple(bits(mask))
        guess = SkeletonGuess(s_vertices, s_vertices, s_vertices)
        return complete(g, spec, guess, family)

    best: SolutionCandidate | None = None
    if jobs <= 1:
        for mask in masks:
            cand = run_one(mask)
            if cand is not None and _better(cand, best):
                best = cand
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            for cand in pool.map(run_one, masks):
                if cand is not None and _better(cand, best):
                    best = cand
    assert best is not None, "the empty guess always completes"
    return best, SolveStats(branches_explored=len(masks))


def solve(
    g: Graph, spec: ProblemSpec, jobs: int = 1, budget: int | None = None
) -> SolutionCandidate:
    cand, _ = solve_with_stats(g, spec, jobs=jobs, budget=budget)
    return cand


def min_transversal(
    g: Graph, spec: ProblemSpec, jobs: int = 1, budget: int | None = None
) -> tuple[int, ...]:
    """Complement of the unit-weight optimum: a minimum FVS for C = {P2},
    a minimum ECT in odd-cactus mode."""
    unit = Graph.build(g.n, g.edges)
    cand = solve(unit, spec, jobs=jobs, budget=budget)
    kept = set(cand.vertices)
    return tuple(v for v in range(g.n) if v not in kept)
