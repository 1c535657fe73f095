"""Full verification chain on the signed Tutte graph, including the deep
4-coloring search, with one line per stage and the JSON report at the end."""

from __future__ import annotations

import argparse
import json
import sys

from signedcolor.pipeline import EXPECTED, STAGES, PipelineConfig, verify_counterexample


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--no-deep", action="store_true", help="skip the 4-coloring search")
    p.add_argument("--budget", type=float, default=PipelineConfig.budget)
    p.add_argument("--flip", type=int, action="append", default=[], help="toggle a vertex sign (negative control)")
    args = p.parse_args()
    config = PipelineConfig(deep=not args.no_deep, budget=args.budget, flip=tuple(args.flip))
    report = verify_counterexample(config)
    for stage in STAGES:
        got = report.verdicts.get(stage, "-")
        print(f"{stage:14s} {got:13s} expected {EXPECTED[stage]}")
    for line in report.divergences:
        print(f"divergence: {line}")
    for line in report.contradictions:
        print(f"contradiction: {line}")
    print(json.dumps(report.to_dict(), indent=2, sort_keys=True))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
