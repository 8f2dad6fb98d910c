"""The full validation suite behind ``blockgraph selftest``.

Nine criteria, each a property sweep over seeded random instances:

  c1  solver equals the subset-scan oracle on four (class, s) configurations
  c2  induced linear-forest containment transfers to the blob graph
  c3  terminal-count bounds on generated block-structured graphs
  c4  even-cycle-free == every block is an edge or an odd cycle
  c5  odd cycle factor <-> line-graph transversal budget, with the
      component dichotomy on optimal complements
  c6  subdivision preserves the transversal optimum and stretches girth
  c7  odd-cactus mode agrees with the explicit truncated class
  c8  transversal size complements the unit-weight optimum
  c9  CLI payloads are byte-identical across worker counts

Everything is deterministic from SEED; sample sizes are fixed here.
"""

from __future__ import annotations

import io
import json
import random
import sys
import tempfile
import time
from dataclasses import dataclass
from pathlib import Path

from . import generators, oracle, recognition, reductions, solver, structure
from .blob import blob_graph
from .graphs import (
    Graph,
    connected_components,
    cycle_graph,
    format_graph,
    girth,
    induced_subgraph,
    path_graph,
)
from .recognition import BlockClassSpec, contains_induced_linear_forest

SEED = 20260808

POOL_RANDOM = 310  # random graphs feeding criterion 1 (n <= 7)
CLUSTER_MAX_N = 8
BLOB_GRAPHS = 200
CBLOCK_SAMPLES = 500
EVENCYCLE_SAMPLES = 500
OCF_RANDOM = 150
OCF_CONSTRUCTED = 60
SUBDIVISION_SAMPLES = 100


@dataclass
class CriterionResult:
    key: str
    title: str
    passed: bool
    checks: int
    detail: str


def _classes():
    p2 = BlockClassSpec.forests()
    p2c3 = BlockClassSpec.from_graphs([path_graph(2), cycle_graph(3)])
    oc = BlockClassSpec.odd_cactus_mode()
    explicit = BlockClassSpec.from_graphs(
        [path_graph(2), cycle_graph(3), cycle_graph(5)]
    )
    return p2, p2c3, oc, explicit


class AcceptanceSuite:
    """Builds the shared instance pools once and evaluates each criterion."""

    def __init__(self, seed: int = SEED, jobs: int = 1):
        self.seed = seed
        self.jobs = jobs
        self._pool: list[Graph] | None = None
        self._clusters: list[Graph] | None = None
        self._suite1: dict[str, list[tuple[Graph, solver.ProblemSpec]]] | None = None
        self._solved: dict[tuple[str, int], tuple] = {}

    # -- shared instance pools ------------------------------------------

    def pool(self) -> list[Graph]:
        if self._pool is None:
            rng = random.Random(self.seed)
            out = []
            for i in range(POOL_RANDOM):
                n = rng.randint(1, 7)
                p = (0.2, 0.35, 0.5, 0.65)[i % 4]
                out.append(generators.random_weighted_graph(rng, n, p))
            self._pool = out
        return self._pool

    def clusters(self) -> list[Graph]:
        if self._clusters is None:
            rng = random.Random(self.seed + 1)
            self._clusters = generators.all_cluster_graphs(CLUSTER_MAX_N, rng)
        return self._clusters

    def suite1(self) -> dict[str, list[tuple[Graph, solver.ProblemSpec]]]:
        """Instances per configuration, filtered to the sP3-free inputs."""
        if self._suite1 is None:
            p2, p2c3, oc, _ = _classes()
            configs = {
                "s1-p2": solver.ProblemSpec(p2, 1),
                "s2-p2": solver.ProblemSpec(p2, 2),
                "s2-p2c3": solver.ProblemSpec(p2c3, 2),
                "s2-odd-cactus": solver.ProblemSpec(oc, 2),
            }
            suite: dict[str, list[tuple[Graph, solver.ProblemSpec]]] = {}
            for key, spec in configs.items():
                instances = [
                    g for g in self.pool() if generators.is_sp3_free(g, spec.s)
                ]
                if key == "s1-p2":
                    instances += self.clusters()
                suite[key] = [(g, spec) for g in instances]
            self._suite1 = suite
        return self._suite1

    def _solve_pair(self, key: str, idx: int):
        """(solver weight, oracle weight, solver vertices) for a suite-1 row."""
        if (key, idx) not in self._solved:
            g, spec = self.suite1()[key][idx]
            cand = solver.solve(g, spec, jobs=self.jobs)
            want = oracle.brute_max_c_block(g, spec.block_class)
            self._solved[(key, idx)] = (cand.weight, want.optimum, cand.vertices)
        return self._solved[(key, idx)]

    def suite7_rows(self) -> list[Graph]:
        """Every 2P3-free graph of suite 1 (the odd-cactus rows already are;
        cluster graphs are P3-free, hence 2P3-free)."""
        rows = [g for g, _ in self.suite1()["s2-odd-cactus"]]
        rows += self.clusters()
        return rows

    # -- criteria ---------------------------------------------------------

    def criterion_1(self) -> CriterionResult:
        checks, bad = 0, []
        for key, rows in self.suite1().items():
            for idx in range(len(rows)):
                got, want, _ = self._solve_pair(key, idx)
                checks += 1
                if got != want:
                    bad.append((key, idx, str(got), str(want)))
        return CriterionResult(
            "c1",
            "solver equals brute-force oracle on every suite-1 instance",
            not bad,
            checks,
            f"{checks} instances across 4 configurations, {len(bad)} mismatches",
        )

    def criterion_2(self) -> CriterionResult:
        rng = random.Random(self.seed + 2)
        checks, bad = 0, 0
        for _ in range(BLOB_GRAPHS):
            n = rng.randint(1, 7)
            g = generators.random_graph(rng, n, rng.choice([0.25, 0.4, 0.55, 0.7]))
            blobbed, _ = blob_graph(g)
            for total in range(1, g.n + 1):
                for pattern in generators.partitions(total):
                    here, _ = contains_induced_linear_forest(g, pattern)
                    there, _ = contains_induced_linear_forest(blobbed, pattern)
                    checks += 1
                    if here != there:
                        bad += 1
        return CriterionResult(
            "c2",
            "linear-forest containment transfers to the blob graph",
            bad == 0,
            checks,
            f"{BLOB_GRAPHS} graphs, {checks} (graph, pattern) checks, {bad} disagreements",
        )

    def criterion_3(self) -> CriterionResult:
        rng = random.Random(self.seed + 3)
        p2, p2c3, _, _ = _classes()
        combos = [(s, spec) for s in (2, 3) for spec in (p2, p2c3)]
        per_combo = CBLOCK_SAMPLES // len(combos)
        checks, bad = 0, 0
        for s, spec in combos:
            d = spec.d
            produced = 0
            while produced < per_combo:
                g = generators.random_c_block_graph(rng, spec)
                if not generators.is_sp3_free(g, s):
                    continue
                nontrivial, _ = structure.split_trivial_components(g)
                if not nontrivial:
                    continue
                keep = [v for comp in nontrivial for v in comp]
                fprime, _ = induced_subgraph(g, keep)
                forest = structure.rooted_block_cut_forest(
                    structure.block_decomposition(fprime), fprime
                )
                terms = structure.find_terminals(forest)
                union = set(terms.type1) | set(terms.type2)
                produced += 1
                checks += 1
                if (
                    len(terms.type1) > d * (s - 1)
                    or len(terms.type2) > (d + 1) * (s - 1)
                    or len(union) > (2 * d + 1) * (s - 1)
                ):
                    bad += 1
        return CriterionResult(
            "c3",
            "terminal counts stay within d(s-1) / (d+1)(s-1) / (2d+1)(s-1)",
            bad == 0,
            checks,
            f"{checks} generated block-structured graphs, {bad} bound violations",
        )

    def criterion_4(self) -> CriterionResult:
        rng = random.Random(self.seed + 4)
        checks, bad = 0, 0
        for _ in range(EVENCYCLE_SAMPLES):
            n = rng.randint(0, 8)
            g = generators.random_graph(rng, n, rng.choice([0.25, 0.4, 0.6]))
            blockwise = not recognition.has_even_cycle(g)
            exhaustive = not any(
                len(c) % 2 == 0 for c in oracle.enumerate_simple_cycles(g)
            )
            checks += 1
            if blockwise != exhaustive:
                bad += 1
        return CriterionResult(
            "c4",
            "no even cycle iff every block is an edge or odd cycle",
            bad == 0,
            checks,
            f"{checks} random graphs, {bad} disagreements",
        )

    def criterion_5(self) -> CriterionResult:
        rng = random.Random(self.seed + 5)
        instances = [
            generators.random_connected_graph(rng, rng.randint(3, 6), max_edges=9)
            for _ in range(OCF_RANDOM)
        ]
        instances += [
            generators.odd_cycle_factor_instance(rng) for _ in range(OCF_CONSTRUCTED)
        ]
        instances = [g for g in instances if g.m <= 9]
        checks, bad, dichotomy_bad, with_ocf = 0, 0, 0, 0
        for g in instances:
            inst = reductions.ocf_to_ect(g)
            has_ocf = oracle.brute_odd_cycle_factor(g)[0]
            report = oracle.brute_min_ect(inst.produced)
            checks += 1
            with_ocf += has_ocf
            if has_ocf != (report.optimum <= inst.budget):
                bad += 1
            if not self._dichotomy_holds(inst, report):
                dichotomy_bad += 1
        return CriterionResult(
            "c5",
            "odd cycle factor iff line-graph transversal within budget",
            bad == 0 and dichotomy_bad == 0 and with_ocf >= 50,
            checks,
            f"{checks} instances ({with_ocf} with factors), {bad} equivalence and "
            f"{dichotomy_bad} dichotomy failures",
        )

    @staticmethod
    def _dichotomy_holds(inst: reductions.ReductionInstance, report) -> bool:
        produced = inst.produced
        kept = [v for v in range(produced.n) if v not in set(report.witness)]
        if len(kept) < inst.source.n:
            return True
        sub, relabel = induced_subgraph(produced, kept)
        inverse = {new: old for old, new in relabel.items()}
        for comp in connected_components(sub):
            comp_graph, _ = induced_subgraph(sub, comp)
            if (
                comp_graph.n >= 3
                and comp_graph.m == comp_graph.n
                and all(comp_graph.degree(v) == 2 for v in range(comp_graph.n))
            ):
                if comp_graph.n % 2 == 0:
                    return False
                continue
            preimage = [inst.vertex_map[inverse[v]] for v in comp]
            verts = sorted({x for e in preimage for x in e})
            index = {x: i for i, x in enumerate(verts)}
            tree = Graph.build(
                len(verts),
                [tuple(sorted((index[a], index[b]))) for a, b in preimage],
            )
            from .graphs import is_connected

            if tree.m != tree.n - 1 or not is_connected(tree):
                return False
        return True

    def criterion_6(self) -> CriterionResult:
        rng = random.Random(self.seed + 6)
        checks, bad = 0, 0
        for _ in range(SUBDIVISION_SAMPLES):
            g = generators.random_graph(rng, rng.randint(2, 6), rng.choice([0.4, 0.6]))
            base = oracle.brute_min_ect(g).optimum
            for p in (3, 4):
                inst = reductions.subdivide(g, 2 * p)
                checks += 1
                ok = True
                if girth(g) is not None and girth(inst.produced) < p:
                    ok = False
                if oracle.brute_min_ect_via_cycles(inst.produced).optimum != base:
                    ok = False
                if not ok:
                    bad += 1
        return CriterionResult(
            "c6",
            "2p-fold subdivision preserves the transversal and stretches girth",
            bad == 0,
            checks,
            f"{checks} (graph, p) pairs, {bad} failures",
        )

    def criterion_7(self) -> CriterionResult:
        _, _, oc, explicit = _classes()
        spec_oc = solver.ProblemSpec(oc, 2)
        spec_explicit = solver.ProblemSpec(explicit, 2)
        checks, bad = 0, 0
        for g in self.suite7_rows():
            got_oc = solver.solve(g, spec_oc, jobs=self.jobs).weight
            got_explicit = solver.solve(g, spec_explicit, jobs=self.jobs).weight
            checks += 1
            if got_oc != got_explicit:
                bad += 1
        return CriterionResult(
            "c7",
            "odd-cactus mode equals the explicit edge/C3/C5 class on suite 1",
            bad == 0,
            checks,
            f"{checks} graphs, {bad} disagreements",
        )

    def criterion_8(self) -> CriterionResult:
        checks, bad = 0, 0
        for rows in self.suite1().values():
            for g, spec in rows:
                unit = Graph.build(g.n, g.edges)
                trans = solver.min_transversal(g, spec, jobs=self.jobs)
                kept = solver.solve(unit, spec, jobs=self.jobs).weight
                checks += 1
                if len(trans) != g.n - kept:
                    bad += 1
        return CriterionResult(
            "c8",
            "transversal size complements the unit-weight optimum",
            bad == 0,
            checks,
            f"{checks} instances, {bad} identity violations",
        )

    def criterion_9(self) -> CriterionResult:
        from . import cli

        _, _, _, explicit = _classes()
        checks, bad = 0, 0
        with tempfile.TemporaryDirectory() as tmp:
            class_files = {
                "s1-p2": "p2",
                "s2-p2": "p2",
                "s2-p2c3": self._class_file(tmp, "p2c3", ["2 1\n0 1\n", "3 3\n0 1\n0 2\n1 2\n"]),
                "s2-odd-cactus": "odd-cactus",
                "c7-explicit": self._class_file(
                    tmp,
                    "explicit",
                    ["2 1\n0 1\n", "3 3\n0 1\n0 2\n1 2\n", format_graph(cycle_graph(5))],
                ),
            }
            jobs_rows: list[tuple[Path, str, int]] = []
            for key, rows in self.suite1().items():
                for idx, (g, spec) in enumerate(rows):
                    path = Path(tmp) / f"{key}-{idx}.graph"
                    path.write_text(format_graph(g))
                    jobs_rows.append((path, class_files[key], spec.s))
            for idx, g in enumerate(self.suite7_rows()):
                path = Path(tmp) / f"c7-explicit-{idx}.graph"
                path.write_text(format_graph(g))
                jobs_rows.append((path, class_files["c7-explicit"], 2))

            for path, class_token, s in jobs_rows:
                payloads = []
                for jobs in (1, 4):
                    buf = io.StringIO()
                    old = sys.stdout
                    sys.stdout = buf
                    try:
                        code = cli.run(
                            [
                                "solve",
                                "--class",
                                class_token,
                                "--s",
                                str(s),
                                "--jobs",
                                str(jobs),
                                str(path),
                            ]
                        )
                    finally:
                        sys.stdout = old
                    assert code == 0, f"solve failed on {path}"
                    doc = json.loads(buf.getvalue())
                    payloads.append(json.dumps(doc["payload"], sort_keys=False))
                checks += 1
                if payloads[0] != payloads[1]:
                    bad += 1
        return CriterionResult(
            "c9",
            "CLI payloads byte-identical between --jobs 1 and --jobs 4",
            bad == 0,
            checks,
            f"{checks} CLI invocation pairs, {bad} payload differences",
        )

    @staticmethod
    def _class_file(tmp: str, name: str, graphs: list[str]) -> str:
        path = Path(tmp) / f"{name}.class"
        path.write_text("\n%\n".join(graphs))
        return f"file:{path}"

    # -- driver -----------------------------------------------------------

    def run(self, keys: list[str] | None = None, out=sys.stderr) -> list[CriterionResult]:
        all_criteria = [
            self.criterion_1,
            self.criterion_2,
            self.criterion_3,
            self.criterion_4,
            self.criterion_5,
            self.criterion_6,
            self.criterion_7,
            self.criterion_8,
            self.criterion_9,
        ]
        results = []
        for fn in all_criteria:
            key = fn.__name__.replace("criterion_", "c")
            if keys and key not in keys:
                continue
            started = time.perf_counter()
            result = fn()
            elapsed = time.perf_counter() - started
            status = "PASS" if result.passed else "FAIL"
            print(
                f"[{result.key}] {result.title}: {status} ({result.detail}, "
                f"{elapsed:.1f}s)",
                file=out,
            )
            results.append(result)
        return results
