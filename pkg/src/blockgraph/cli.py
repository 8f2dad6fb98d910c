"""Command-line entry point.

Every subcommand prints one JSON report to stdout with a stable key order:
subcommand, input digest, version, payload, wall-clock milliseconds.
Identical input and flags always produce an identical payload.

Exit codes: 0 success; 1 usage error; 2 input or graph-class error;
3 branch-budget overflow.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__, blob, mwis, oracle, recognition, reductions, solver, structure
from .errors import (
    BlockGraphError,
    BudgetExceededError,
    ClassViolationError,
    ParseError,
    SizeCapError,
    TrivialComponentError,
)
from .graphs import Graph, format_graph, girth, induced_subgraph, parse_graph
from .recognition import BlockClassSpec


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exits 2; we reserve that
        raise UsageError(message)


def _load_graph(path: str) -> tuple[Graph, str]:
    data = Path(path).read_bytes()
    digest = hashlib.sha256(data).hexdigest()
    return parse_graph(data.decode("utf-8")), digest


def _load_class(token: str) -> BlockClassSpec:
    if token == "p2":
        return BlockClassSpec.forests()
    if token == "odd-cactus":
        return BlockClassSpec.odd_cactus_mode()
    if token.startswith("file:"):
        return recognition.parse_block_class(Path(token[5:]).read_text())
    raise UsageError(f"unknown block class {token!r} (use p2, odd-cactus or file:PATH)")


def _frac(x: Fraction) -> str:
    return str(x)


def _certificate_json(cert: recognition.CBlockCertificate) -> dict:
    return {
        "ok": cert.ok,
        "blocks": [
            {"vertices": list(block), "member": tag} for block, tag in cert.matches
        ],
        "offending": list(cert.offending) if cert.offending else None,
    }


def _report(subcommand: str, digest: str, payload: dict, started: float) -> str:
    doc = {
        "subcommand": subcommand,
        "input_digest": digest,
        "version": __version__,
        "payload": payload,
        "wallclock_ms": int((time.perf_counter() - started) * 1000),
    }
    return json.dumps(doc, indent=2)


def _build_parser() -> _Parser:
    parser = _Parser(prog="blockgraph")
    sub = parser.add_subparsers(dest="command")

    def add_common(p, with_class=True):
        p.add_argument("graph", help="input graph file")
        if with_class:
            p.add_argument("--class", dest="block_class", default="p2")
            p.add_argument("--s", dest="s", type=int, default=2)

    p_solve = sub.add_parser("solve", description="exact max C-block subgraph")
    add_common(p_solve)
    p_solve.add_argument(
        "--objective",
        choices=["max-subgraph", "min-transversal"],
        default="max-subgraph",
    )
    p_solve.add_argument("--budget", type=int, default=None)
    p_solve.add_argument("--jobs", type=int, default=1)

    p_oracle = sub.add_parser("oracle", description="brute-force reference answer")
    add_common(p_oracle)
    p_oracle.add_argument(
        "--objective",
        choices=["max-subgraph", "min-transversal"],
        default="max-subgraph",
    )
    p_oracle.add_argument("--engine", choices=["brute"], default="brute")

    p_an = sub.add_parser("analyze", description="block-cut structure dump")
    p_an.add_argument("graph")

    p_blob = sub.add_parser("blob", description="emit the blob graph")
    p_blob.add_argument("graph")
    p_blob.add_argument("--cap", type=int, default=blob.BLOB_CAP_DEFAULT)

    p_mwis = sub.add_parser("mwis", description="max weight independent set")
    p_mwis.add_argument("graph")

    p_red = sub.add_parser("reduce", description="hardness-instance generators")
    p_red.add_argument("graph")
    p_red.add_argument("--kind", choices=["line", "ocf-ect", "subdivide"], required=True)
    p_red.add_argument("--t", type=int, default=0)

    p_rec = sub.add_parser("recognize", description="class membership queries")
    p_rec.add_argument("graph")
    p_rec.add_argument("--pattern", help="linear forest, e.g. 3,3")
    p_rec.add_argument("--status", choices=["fvs", "ect", "oct"])
    p_rec.add_argument("--class", dest="block_class")

    p_self = sub.add_parser("selftest", description="run the acceptance suite")
    p_self.add_argument("--criterion", action="append", default=None)
    p_self.add_argument("--jobs", type=int, default=1)
    return parser


def run(argv: list[str]) -> int:
    started = time.perf_counter()
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("missing subcommand")
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 1

    try:
        payload, digest = _dispatch(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except BudgetExceededError as exc:
        print(_error_report(args.command, exc, started, kind="budget-exceeded"))
        return 3
    except ClassViolationError as exc:
        print(
            _error_report(
                args.command, exc, started, kind="class-violation",
                witness=list(exc.witness),
            )
        )
        return 2
    except (ParseError, SizeCapError, TrivialComponentError, BlockGraphError, ValueError, OSError) as exc:
        print(_error_report(args.command, exc, started, kind=type(exc).__name__))
        return 2

    print(_report(args.command, digest, payload, started))
    if args.command == "selftest" and not payload["all_passed"]:
        return 1
    return 0


def _error_report(command: str, exc: Exception, started: float, kind: str, **extra) -> str:
    doc = {
        "subcommand": command,
        "error": {"kind": kind, "message": str(exc), **extra},
        "version": __version__,
        "wallclock_ms": int((time.perf_counter() - started) * 1000),
    }
    return json.dumps(doc, indent=2)


def _dispatch(args) -> tuple[dict, str]:
    cmd = args.command
    if cmd == "solve":
        g, digest = _load_graph(args.graph)
        spec = solver.ProblemSpec(_load_class(args.block_class), args.s)
        target = g
        if args.objective == "min-transversal":
            target = Graph.build(g.n, g.edges)
        cand, stats = solver.solve_with_stats(
            target, spec, jobs=args.jobs, budget=args.budget
        )
        transversal = [v for v in range(g.n) if v not in set(cand.vertices)]
        payload = {
            "objective": args.objective,
            "weight": _frac(cand.weight),
            "vertices": list(cand.vertices),
            "transversal": transversal,
            "certificate": _certificate_json(cand.certificate),
            "branches_explored": stats.branches_explored,
        }
        return payload, digest

    if cmd == "oracle":
        g, digest = _load_graph(args.graph)
        spec = _load_class(args.block_class)
        target = g
        if args.objective == "min-transversal":
            target = Graph.build(g.n, g.edges)
        report = oracle.brute_max_c_block(target, spec)
        transversal = [v for v in range(g.n) if v not in set(report.witness)]
        payload = {
            "objective": args.objective,
            "engine": args.engine,
            "weight": _frac(report.optimum),
            "vertices": list(report.witness),
            "transversal": transversal,
            "optima_count": report.optima_count,
        }
        return payload, digest

    if cmd == "analyze":
        g, digest = _load_graph(args.graph)
        return _analyze_payload(g), digest

    if cmd == "blob":
        g, digest = _load_graph(args.graph)
        produced, subsets = blob.blob_graph(g, cap=args.cap)
        payload = {
            "graph": format_graph(produced),
            "subsets": [list(s) for s in subsets],
        }
        return payload, digest

    if cmd == "mwis":
        g, digest = _load_graph(args.graph)
        res = mwis.max_weight_independent_set(g)
        return {"weight": _frac(res.weight), "vertices": list(res.chosen)}, digest

    if cmd == "reduce":
        g, digest = _load_graph(args.graph)
        if args.kind == "line":
            produced, vmap = reductions.line_graph(g)
            payload = {
                "kind": "line",
                "graph": format_graph(produced),
                "vertex_map": [list(e) for e in vmap],
            }
        elif args.kind == "ocf-ect":
            inst = reductions.ocf_to_ect(g)
            payload = {
                "kind": "ocf-ect",
                "graph": format_graph(inst.produced),
                "budget": inst.budget,
                "vertex_map": [list(e) for e in inst.vertex_map],
            }
        else:
            inst = reductions.subdivide(g, args.t)
            payload = {
                "kind": "subdivide",
                "t": args.t,
                "graph": format_graph(inst.produced),
                "path_map": {
                    f"{u},{v}": list(internal)
                    for (u, v), internal in sorted(inst.path_map.items())
                },
            }
        return payload, digest

    if cmd == "recognize":
        g, digest = _load_graph(args.graph)
        payload: dict = {"n": g.n, "m": g.m, "girth": girth(g)}
        if args.pattern:
            pattern = tuple(int(x) for x in args.pattern.split(","))
            found, witness = recognition.contains_induced_linear_forest(g, pattern)
            payload["pattern"] = list(pattern)
            payload["contains"] = found
            payload["witness"] = list(witness) if witness else None
            if args.status:
                payload["status"] = recognition.complexity_status(
                    pattern, args.status
                ).value
        elif args.status:
            raise UsageError("--status needs --pattern")
        if args.block_class:
            spec = _load_class(args.block_class)
            cert = recognition.is_c_block_graph(g, spec)
            payload["is_c_block"] = cert.ok
            payload["certificate"] = _certificate_json(cert)
        return payload, digest

    if cmd == "selftest":
        from . import acceptance

        suite = acceptance.AcceptanceSuite(jobs=args.jobs)
        results = suite.run(keys=args.criterion, out=sys.stderr)
        payload = {
            "criteria": [
                {"key": r.key, "title": r.title, "passed": r.passed, "detail": r.detail}
                for r in results
            ],
            "all_passed": all(r.passed for r in results),
        }
        return payload, "-"

    raise UsageError(f"unknown subcommand {cmd!r}")


def _analyze_payload(g: Graph) -> dict:
    dec = structure.block_decomposition(g)
    nontrivial, trivial = structure.split_trivial_components(g)
    payload = {
        "blocks": [list(b) for b in dec.blocks],
        "cutvertices": list(dec.cutvertices),
        "trivial_components": [list(c) for c in trivial],
        "nontrivial_components": [list(c) for c in nontrivial],
        "forest": None,
        "terminals": None,
        "classification": None,
        "skeleton": None,
    }
    if not nontrivial:
        return payload
    keep = sorted(v for comp in nontrivial for v in comp)
    fprime, relabel = induced_subgraph(g, keep)
    inverse = {new: old for old, new in relabel.items()}

    def back(vs):
        return sorted(inverse[v] for v in vs)

    forest = structure.rooted_block_cut_forest(
        structure.block_decomposition(fprime), fprime
    )
    terms = structure.find_terminals(forest)
    classes = structure.classify_blocks(forest, terms)
    skel = structure.skeleton(fprime, forest, classes, terms)
    payload["forest"] = {
        "roots": back(forest.roots),
        "blocks": [back(b) for b in forest.blocks],
        "parent_of_block": [
            inverse[forest.parent_of_block[i]] for i in range(len(forest.blocks))
        ],
    }
    payload["terminals"] = {
        "type1": back(terms.type1),
        "type2": back(terms.type2),
        "witnesses": {str(inverse[t]): back(ws) for t, ws in terms.witnesses.items()},
    }
    payload["classification"] = {
        "b_l1": [back(forest.blocks[i]) for i in classes.b_l1],
        "b_l2": [back(forest.blocks[i]) for i in classes.b_l2],
        "b_l3": [back(forest.blocks[i]) for i in classes.b_l3],
        "b_w": [back(forest.blocks[i]) for i in classes.b_w],
        "b_in": [back(forest.blocks[i]) for i in classes.b_in],
        "double_blocks": [back(d) for d in classes.double_block_vertices(forest)],
    }
    payload["skeleton"] = back(skel)
    return payload


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
