import json
import subprocess
import sys
from pathlib import Path

import pytest

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"


def run(name, *args):
    proc = subprocess.run(
        [sys.executable, str(SCRIPTS / name), *args], capture_output=True, text=True, check=False, timeout=600
    )
    return proc.returncode, proc.stdout


def test_search_placements():
    code, out = run("search_placements.py", "--show", "2")
    report = json.loads(out)
    assert code == 0
    assert report["local_replay_confirmed"] == report["no_consistent_two_factor"] == 96
    assert report["local_and_global_agree"] and report["shipped_is_valid"]


def test_replay_fragment_forcing():
    code, out = run("replay_fragment_forcing.py")
    assert code == 0
    assert out.rstrip().endswith("confirmed: True")


def test_deep_coloring_check():
    code, out = run("deep_coloring_check.py", "--controls", "1", "--budget", "600")
    report = json.loads(out)
    assert code == 0
    assert report["triangulation"]["verdict"] == "UNSAT"
    assert all(r["verdict"] == "SAT" and r["certificate_proper"] for k, r in report.items() if k != "triangulation")


@pytest.mark.parametrize("args, expected", [((), 0), (("--no-deep", "--flip", "4", "--flip", "5"), 1)])
def test_verify_counterexample(args, expected):
    code, out = run("verify_counterexample.py", *args)
    assert code == expected
    assert "coloring" in out
