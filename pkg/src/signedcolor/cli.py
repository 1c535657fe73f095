"""Command line: construct, solve, verify-counterexample, export.

Exit codes: 0 completed with the declared expected verdicts, 1 completed
with an outcome only (or one diverging from the expectation), 2 input
error, 3 contradiction between verdicts that must agree.
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from pathlib import Path

from . import __version__
from .catalog import polyhedra, random_cubic_planar, random_even_negatives, random_signature
from .coloring import BudgetExceeded, chromatic_number, solve_coloring
from .constructions import (
    build_counterexample,
    build_gadget,
    build_tutte_fragment,
    build_tutte_graph,
    verify_no_consistent_two_factor,
)
from .graph import ContradictionError, InputError, SignedGraph, VertexSignedGraph
from .labeling import solve_strong_labeling, solve_weak_labeling
from .pipeline import (
    EXIT_CONTRADICTION,
    EXIT_EXPECTED,
    EXIT_INPUT,
    EXIT_OUTCOME,
    STAGES,
    PipelineConfig,
    digest,
    verify_counterexample,
)
from .serialize import (
    coloring_to_dict,
    dumps,
    graph_from_json,
    graph_to_dict,
    graph_to_json,
    labeling_to_dict,
    to_dot,
    to_graph6,
    two_factor_to_dict,
)

CONSTRUCTIONS = (
    "gadget:K",
    "tutte-fragment",
    "tutte-signed",
    "counterexample-cubic",
    "counterexample-triangulation",
    "random-cubic:N",
    "random-signed:NAME",
)
MODES = ("color", "color-K", "chromatic", "weak-label", "strong-label", "two-factors")


def construct(name: str, seed: int = 0) -> dict:
    """JSON document of a named construction."""
    if name.startswith("gadget:"):
        g = build_gadget(_int_param(name))
        d = graph_to_dict(g.graph)
        d["ports"] = list(g.ports)
        return d
    if name == "tutte-fragment":
        t = build_tutte_fragment()
        names = [x for x in t.names if len(t.ends[x]) == 2]
        g = VertexSignedGraph.from_edges(
            t.n, [t.ends[x] for x in names], [t.sign(v) for v in range(t.n)]
        )
        d = graph_to_dict(g)
        d["edge_names"] = [next(x for x in names if tuple(sorted(t.ends[x])) == e) for e in g.edges]
        d["attachments"] = {a: t.ends[a][0] for a in ("e1", "e2", "e3")}
        d["aliases"] = dict(t.aliases)
        return d
    if name == "tutte-signed":
        return graph_to_dict(build_tutte_graph())
    if name == "counterexample-cubic":
        return graph_to_dict(build_counterexample().cubic)
    if name == "counterexample-triangulation":
        return graph_to_dict(build_counterexample().triangulation)
    rng = random.Random(seed)
    if name.startswith("random-cubic:"):
        return graph_to_dict(random_even_negatives(random_cubic_planar(_int_param(name), rng), rng))
    if name.startswith("random-signed:"):
        catalog = polyhedra(20)
        key = name.split(":", 1)[1]
        if key not in catalog:
            raise InputError(f"unknown catalog graph {key!r}; choose from {', '.join(sorted(catalog))}")
        return graph_to_dict(random_signature(catalog[key], rng))
    raise InputError(f"unknown construction {name!r}; choose from {', '.join(CONSTRUCTIONS)}")


def _int_param(name: str) -> int:
    try:
        return int(name.split(":", 1)[1])
    except ValueError:
        raise InputError(f"{name!r} needs an integer parameter") from None


def _as_vertex_signed(g) -> VertexSignedGraph:
    if isinstance(g, VertexSignedGraph):
        return g
    if g.negative_edges():
        raise InputError("labeling modes need a vertex-signed graph (edge signs given)")
    return VertexSignedGraph(g.n, g.edges, (1,) * g.n, g.rotation)


def solve(text: str, mode: str, k: int | None, max_k: int, budget: float | None, threads: int) -> dict:
    g = graph_from_json(text)
    out: dict = {"command": "solve", "mode": mode, "input_digest": digest(text), "version": __version__}
    stats: dict = {}
    if mode.startswith("color-"):
        k = _int_param(mode.replace("-", ":", 1))
        mode = "color"
    if mode in ("color", "chromatic"):
        if not isinstance(g, SignedGraph):
            raise InputError("coloring modes need an edge-signed graph")
        if mode == "chromatic":
            chi = chromatic_number(g, max_k, time_limit=budget)
            out["verdict"] = "FOUND" if chi is not None else "EXCEEDS"
            out["chromatic_number"] = chi
            out["max_k"] = max_k
            return out
        if k is None:
            raise InputError("color mode needs --k")
        colors = solve_coloring(g, k, time_limit=budget, threads=threads, stats=stats)
        out["verdict"] = "SAT" if colors is not None else "UNSAT"
        if colors is not None:
            out["artifact"] = coloring_to_dict(k, colors)
    elif mode in ("weak-label", "strong-label"):
        h = _as_vertex_signed(g)
        solver = solve_weak_labeling if mode == "weak-label" else solve_strong_labeling
        labels = solver(h, stats)
        out["verdict"] = "SAT" if labels is not None else "UNSAT"
        if labels is not None:
            out["artifact"] = labeling_to_dict(labels)
    elif mode == "two-factors":
        verdict = verify_no_consistent_two_factor(_as_vertex_signed(g), require_even=False)
        stats["two_factors_examined"] = verdict.examined
        out["verdict"] = "SAT" if verdict.sat else "UNSAT"
        if verdict.sat:
            out["artifact"] = two_factor_to_dict(verdict.consistent)
    else:
        raise InputError(f"unknown mode {mode!r}; choose from {', '.join(MODES)}")
    out["stats"] = stats
    return out


def export(text: str, fmt: str, underlying: bool) -> str:
    g = graph_from_json(text)
    if fmt == "json":
        return graph_to_json(g)
    if fmt == "dot":
        return to_dot(g)
    if fmt == "graph6":
        return to_graph6(g, underlying) + "\n"
    raise InputError(f"unknown format {fmt!r}")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="signedcolor", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="emit a named construction as graph JSON")
    c.add_argument("name", help=" | ".join(CONSTRUCTIONS))
    c.add_argument("--seed", type=int, default=0, help="seed for the random-* constructions")

    s = sub.add_parser("solve", help="solve one instance")
    s.add_argument("file", help="graph JSON file, or - for stdin")
    s.add_argument("--mode", required=True, help=" | ".join(MODES))
    s.add_argument("--k", type=int)
    s.add_argument("--max-k", type=int, default=6)
    s.add_argument("--budget", type=float, help="time limit in seconds for coloring searches")
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("--expect", choices=("SAT", "UNSAT", "FOUND", "EXCEEDS"))

    v = sub.add_parser("verify-counterexample", help="run the full verification chain")
    v.add_argument("--stage", action="append", choices=STAGES, help="restrict to these stages")
    v.add_argument("--deep", action="store_true", help="also search 4-colorings of the triangulation")
    v.add_argument("--budget", type=float, default=1800.0, help="seconds for the deep search")
    v.add_argument("--threads", type=int, default=1)
    v.add_argument("--flip", type=int, action="append", default=[], help="toggle a Tutte vertex sign (negative control)")

    e = sub.add_parser("export", help="render a graph file")
    e.add_argument("file")
    e.add_argument("--format", choices=("dot", "json", "graph6"), default="json")
    e.add_argument("--underlying", action="store_true", help="allow graph6 to drop signs")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "construct":
            sys.stdout.write(dumps(construct(args.name, args.seed)))
            return EXIT_EXPECTED
        if args.command == "export":
            sys.stdout.write(export(_read(args.file), args.format, args.underlying))
            return EXIT_EXPECTED
        if args.command == "solve":
            start = time.monotonic()
            try:
                report = solve(_read(args.file), args.mode, args.k, args.max_k, args.budget, args.threads)
            except BudgetExceeded as exc:
                report = {"command": "solve", "mode": args.mode, "verdict": "BUDGET", "message": str(exc)}
            report["wall_time"] = round(time.monotonic() - start, 3)
            sys.stdout.write(dumps(report))
            if args.expect is None:
                return EXIT_OUTCOME
            return EXIT_EXPECTED if report["verdict"] == args.expect else EXIT_OUTCOME
        config = PipelineConfig(
            stages=tuple(args.stage) if args.stage else STAGES,
            deep=args.deep,
            budget=args.budget,
            threads=args.threads,
            flip=tuple(args.flip),
        )
        report = verify_counterexample(config)
        sys.stdout.write(dumps(report.to_dict()))
        return report.exit_code
    except ContradictionError as exc:
        print(f"contradiction: {exc}", file=sys.stderr)
        return EXIT_CONTRADICTION
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
