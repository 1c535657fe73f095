"""4-coloring search on the 61-vertex signed triangulation, with negative
controls that should turn it colorable, and the all-positive sanity check."""

from __future__ import annotations

import argparse
import json
import random
import time
from dataclasses import dataclass

from signedcolor.catalog import random_signature
from signedcolor.coloring import is_proper, solve_coloring
from signedcolor.constructions import build_counterexample, replace_vertices
from signedcolor.labeling import signature_from_negative_vertices
from signedcolor.pipeline import tampered_tutte


@dataclass(frozen=True)
class DeepConfig:
    budget: float = 1800.0
    threads: int = 1
    controls: int = 3  # random re-signings of the triangulation


def timed_solve(g, config: DeepConfig) -> dict:
    stats: dict = {}
    start = time.monotonic()
    colors = solve_coloring(g, 4, time_limit=config.budget, threads=config.threads, stats=stats)
    out = {"verdict": "UNSAT" if colors is None else "SAT", "seconds": round(time.monotonic() - start, 2)}
    out.update(stats)
    if colors is not None:
        out["certificate_proper"] = is_proper(g, 4, colors)
    return out


def run(config: DeepConfig) -> dict:
    tri = build_counterexample().triangulation
    results = {"triangulation": timed_solve(tri, config)}
    results["all_positive"] = timed_solve(tri.with_sigma((1,) * tri.m), config)
    # toggling two host signs keeps the negative count even
    h = tampered_tutte([4, 5])
    cubic, _ = replace_vertices(h, h.negative_vertices)
    results["tampered_flip_4_5"] = timed_solve(signature_from_negative_vertices(cubic).primal, config)
    rng = random.Random(0)
    for i in range(config.controls):
        results[f"random_signature_{i}"] = timed_solve(random_signature(tri, rng), config)
    return results


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--budget", type=float, default=DeepConfig.budget)
    p.add_argument("--threads", type=int, default=DeepConfig.threads)
    p.add_argument("--controls", type=int, default=DeepConfig.controls)
    args = p.parse_args()
    print(json.dumps(run(DeepConfig(args.budget, args.threads, args.controls)), indent=2))


if __name__ == "__main__":
    main()
