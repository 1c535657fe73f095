"""End-to-end check that the signed triangulation built from the Tutte graph
has no 4-coloring, with cross-checks between the dual verdicts."""

from __future__ import annotations

import hashlib
import time
from dataclasses import asdict, dataclass, field
from typing import Sequence

from . import __version__
from .coloring import BudgetExceeded, first_improper_edge, solve_coloring
from .constructions import (
    build_counterexample,
    build_tutte_graph,
    contract_all,
    replace_vertices,
    verify_no_consistent_two_factor,
)
from .factors import strong_labeling_from_two_factor, two_factor_from_strong_labeling, is_consistent
from .graph import ContradictionError, VertexSignedGraph, trace_faces
from .labeling import (
    is_strong_labeling,
    labeling_to_coloring,
    signature_from_negative_vertices,
    solve_strong_labeling,
    solve_weak_labeling,
)
from .serialize import graph_to_json

STAGES = ("two-factors", "strong-label", "weak-label", "triangulation", "coloring")
EXPECTED = {
    "two-factors": "UNSAT",
    "strong-label": "UNSAT",
    "weak-label": "UNSAT",
    "triangulation": "OK",
    "coloring": "UNSAT",
}

TRIANGULATION_VERTICES = 61

EXIT_EXPECTED, EXIT_OUTCOME, EXIT_INPUT, EXIT_CONTRADICTION = 0, 1, 2, 3


@dataclass(frozen=True)
class PipelineConfig:
    stages: tuple[str, ...] = STAGES
    deep: bool = False
    budget: float = 1800.0  # seconds for the deep coloring search
    threads: int = 1
    flip: tuple[int, ...] = ()  # vertices of the signed Tutte graph whose sign is toggled


@dataclass
class RunReport:
    command: str
    input_digest: str
    version: str = __version__
    verdicts: dict[str, str] = field(default_factory=dict)
    counts: dict[str, int] = field(default_factory=dict)
    divergences: list[str] = field(default_factory=list)
    contradictions: list[str] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def exit_code(self) -> int:
        if self.contradictions:
            return EXIT_CONTRADICTION
        return EXIT_OUTCOME if self.divergences else EXIT_EXPECTED

    def to_dict(self, timing: bool = True) -> dict:
        d = asdict(self)
        d["exit_code"] = self.exit_code
        if not timing:
            d.pop("wall_time")
        return d


def digest(text: str) -> str:
    return "sha256:" + hashlib.sha256(text.encode()).hexdigest()


def tampered_tutte(flip: Sequence[int]) -> VertexSignedGraph:
    h = build_tutte_graph()
    signs = list(h.vertex_signs)
    for v in flip:
        if not 0 <= v < h.n:
            raise ValueError(f"vertex {v} is not in the Tutte graph")
        signs[v] = -signs[v]
    return h.with_vertex_signs(signs)


def verify_counterexample(config: PipelineConfig = PipelineConfig()) -> RunReport:
    """Run the selected stages and compare them with each other and the expected profile.

    Stages: consistent 2-factors and strong labelings of the signed Tutte
    graph, weak labelings of its gadget-bearing version, the dual
    triangulation, and (with ``deep``) 4-colorings of that triangulation.
    """
    start = time.monotonic()
    for s in config.stages:
        if s not in STAGES:
            raise ValueError(f"unknown stage {s!r}; choose from {', '.join(STAGES)}")
    tutte = tampered_tutte(config.flip) if config.flip else build_tutte_graph()
    report = RunReport("verify-counterexample", digest(graph_to_json(tutte)))
    v, c = report.verdicts, report.counts
    even = len(tutte.negative_vertices) % 2 == 0
    c["tutte_vertices"] = tutte.n
    c["tutte_negatives"] = len(tutte.negative_vertices)
    wanted = set(config.stages)
    need_cubic = wanted & {"weak-label", "triangulation", "coloring"}

    strong_labels = factor = weak_labels = None
    if "two-factors" in wanted:
        verdict = verify_no_consistent_two_factor(tutte, require_even=False)
        c["two_factors_examined"] = verdict.examined
        factor = verdict.consistent
        v["two-factors"] = "SAT" if verdict.sat else "UNSAT"
        if factor is not None and not is_consistent(tutte, factor):
            report.contradictions.append("two-factors: certificate is not consistent")

    if "strong-label" in wanted:
        if not even:
            v["strong-label"] = "PRECONDITION"
        else:
            stats: dict = {}
            strong_labels = solve_strong_labeling(tutte, stats)
            c["strong_label_treewidth"] = stats["treewidth"]
            v["strong-label"] = "SAT" if strong_labels is not None else "UNSAT"

    cubic = pair = regions = None
    if need_cubic:
        if not even:
            for s in ("weak-label", "triangulation", "coloring"):
                if s in wanted:
                    v[s] = "PRECONDITION"
        else:
            if not config.flip:
                ce = build_counterexample()
                cubic, regions, pair = ce.cubic, ce.regions, ce.pair
            else:
                cubic, regions = replace_vertices(tutte, tutte.negative_vertices)
                pair = signature_from_negative_vertices(cubic)
            c["cubic_vertices"] = cubic.n
            c["cubic_edges"] = cubic.m
            c["cubic_negatives"] = len(cubic.negative_vertices)

    if "weak-label" in wanted and cubic is not None:
        stats = {}
        weak_labels = solve_weak_labeling(cubic, stats)
        c["weak_label_treewidth"] = stats["treewidth"]
        v["weak-label"] = "SAT" if weak_labels is not None else "UNSAT"

    if "triangulation" in wanted and pair is not None:
        g = pair.primal
        faces = trace_faces(g)
        c["triangulation_vertices"] = g.n
        c["triangulation_edges"] = g.m
        c["triangulation_negative_edges"] = len(g.negative_edges())
        ok = g.n == cubic.m - cubic.n + 2 and all(len(f) == 3 for f in faces)
        v["triangulation"] = "OK" if ok else "MISMATCH"
        if g.n != TRIANGULATION_VERTICES:
            report.divergences.append(f"triangulation: expected {TRIANGULATION_VERTICES} vertices, got {g.n}")

    colors = None
    if "coloring" in wanted and pair is not None:
        if not config.deep:
            v["coloring"] = "SKIPPED"
        else:
            stats = {}
            try:
                colors = solve_coloring(pair.primal, 4, time_limit=config.budget, threads=config.threads, stats=stats)
                v["coloring"] = "SAT" if colors is not None else "UNSAT"
            except BudgetExceeded:
                v["coloring"] = "BUDGET"
            c.update({f"coloring_{k}": n for k, n in stats.items()})

    _cross_check(report, tutte, factor, strong_labels, cubic, regions, pair, weak_labels, colors)
    for stage, got in v.items():
        if got not in (EXPECTED[stage], "SKIPPED"):
            report.divergences.append(f"{stage}: expected {EXPECTED[stage]}, got {got}")
    report.wall_time = round(time.monotonic() - start, 3)
    return report


def _cross_check(report, tutte, factor, strong_labels, cubic, regions, pair, weak_labels, colors):
    v, bad = report.verdicts, report.contradictions

    def both(a, b):
        return v.get(a) in ("SAT", "UNSAT") and v.get(b) in ("SAT", "UNSAT")

    if both("two-factors", "strong-label") and v["two-factors"] != v["strong-label"]:
        bad.append("strong labelings and consistent 2-factors disagree")
    if factor is not None and v.get("strong-label") in ("SAT", "UNSAT"):
        if not is_strong_labeling(tutte, strong_labeling_from_two_factor(tutte, factor)):
            bad.append("2-factor certificate does not give a strong labeling")
    if strong_labels is not None and not is_consistent(tutte, two_factor_from_strong_labeling(tutte, strong_labels)):
        bad.append("strong labeling does not give a consistent 2-factor")
    if both("strong-label", "weak-label") and v["strong-label"] != v["weak-label"]:
        bad.append("gadget reduction: strong labeling of the host and weak labeling of the gadget graph disagree")
    if weak_labels is not None:
        _, contracted = contract_all(cubic, regions, weak_labels)
        if not is_strong_labeling(tutte, contracted):
            bad.append("contracting the weak labeling does not give a strong labeling")
        try:
            labeling_to_coloring(pair, weak_labels)
        except ContradictionError as exc:
            bad.append(f"weak labeling does not lift to a coloring: {exc}")
    if both("weak-label", "coloring") and v["weak-label"] != v["coloring"]:
        bad.append("4-colorings of the triangulation and weak labelings of its dual disagree")
    if colors is not None and first_improper_edge(pair.primal, 4, colors) is not None:
        bad.append("coloring certificate is improper")
