import json
import subprocess
import sys

import pytest

from signedcolor.catalog import cube, tetrahedron
from signedcolor.cli import main
from signedcolor.coloring import is_proper
from signedcolor.graph import SignedGraph
from signedcolor.labeling import is_strong_labeling, is_weak_labeling
from signedcolor.serialize import graph_from_json, graph_to_json, labeling_from_dict


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def construct(capsys, tmp_path, name):
    code, out, _ = run(capsys, "construct", name)
    assert code == 0
    path = tmp_path / f"{name.replace(':', '_')}.json"
    path.write_text(out)
    return path, json.loads(out)


def test_construct_counts(capsys, tmp_path):
    _, d = construct(capsys, tmp_path, "gadget:3")
    assert d["n"] == 7 and d["ports"] == [0, 2, 4]
    _, d = construct(capsys, tmp_path, "tutte-signed")
    g = graph_from_json(json.dumps(d))
    assert g.n == 46 and len(g.negative_vertices) == 12
    _, d = construct(capsys, tmp_path, "counterexample-triangulation")
    assert graph_from_json(json.dumps(d)).n == 61
    _, d = construct(capsys, tmp_path, "counterexample-cubic")
    assert graph_from_json(json.dumps(d)).n == 118
    _, d = construct(capsys, tmp_path, "tutte-fragment")
    assert d["n"] == 15 and d["aliases"] == {"e25": "e24"}
    assert len(d["edge_names"]) == 21 and d["attachments"] == {"e1": 0, "e2": 5, "e3": 7}


def test_construct_random_is_seeded(capsys):
    a = run(capsys, "construct", "random-cubic:12", "--seed", "4")[1]
    b = run(capsys, "construct", "random-cubic:12", "--seed", "4")[1]
    assert a == b
    a = run(capsys, "construct", "random-signed:icosahedron", "--seed", "1")[1]
    assert graph_from_json(a).n == 12


@pytest.mark.parametrize("name", ["nope", "gadget:4", "gadget:x", "random-signed:nope"])
def test_construct_unknown(capsys, name):
    code, out, err = run(capsys, "construct", name)
    assert code == 2 and out == "" and err.startswith("error:")


def test_solve_color_sat_with_checked_artifact(capsys, tmp_path):
    path = tmp_path / "cube.json"
    path.write_text(graph_to_json(cube()))
    code, out, _ = run(capsys, "solve", str(path), "--mode", "color-4", "--expect", "SAT")
    assert code == 0
    report = json.loads(out)
    assert report["verdict"] == "SAT"
    assert is_proper(cube(), 4, report["artifact"]["colors"])
    code, _, _ = run(capsys, "solve", str(path), "--mode", "color", "--k", "4")
    assert code == 1  # outcome only, nothing declared


def test_solve_expect_mismatch_exit_1(capsys, tmp_path):
    path = tmp_path / "k4.json"
    path.write_text(graph_to_json(tetrahedron()))
    code, out, _ = run(capsys, "solve", str(path), "--mode", "color-2", "--expect", "SAT")
    assert code == 1 and json.loads(out)["verdict"] == "UNSAT"


def test_solve_chromatic(capsys, tmp_path):
    path = tmp_path / "k4.json"
    path.write_text(graph_to_json(tetrahedron()))
    code, out, _ = run(capsys, "solve", str(path), "--mode", "chromatic", "--expect", "FOUND")
    assert code == 0 and json.loads(out)["chromatic_number"] == 4


def test_solve_counterexample_modes(capsys, tmp_path):
    cubic, _ = construct(capsys, tmp_path, "counterexample-cubic")
    code, out, _ = run(capsys, "solve", str(cubic), "--mode", "weak-label", "--expect", "UNSAT")
    assert code == 0 and json.loads(out)["verdict"] == "UNSAT"
    tutte, _ = construct(capsys, tmp_path, "tutte-signed")
    code, out, _ = run(capsys, "solve", str(tutte), "--mode", "two-factors", "--expect", "UNSAT")
    assert code == 0 and json.loads(out)["stats"]["two_factors_examined"] == 960
    code, out, _ = run(capsys, "solve", str(tutte), "--mode", "strong-label", "--expect", "UNSAT")
    assert code == 0


def test_solve_color4_on_triangulation(capsys, tmp_path):
    tri, _ = construct(capsys, tmp_path, "counterexample-triangulation")
    code, out, _ = run(capsys, "solve", str(tri), "--mode", "color-4", "--expect", "UNSAT", "--budget", "600")
    assert code == 0
    assert json.loads(out)["verdict"] == "UNSAT"


def test_solve_labeling_artifacts_checked(capsys, tmp_path):
    h = graph_from_json(run(capsys, "construct", "random-cubic:10", "--seed", "2")[1])
    path = tmp_path / "h.json"
    path.write_text(graph_to_json(h))
    for mode, check in (("weak-label", is_weak_labeling), ("strong-label", is_strong_labeling)):
        code, out, _ = run(capsys, "solve", str(path), "--mode", mode)
        report = json.loads(out)
        assert code == 1
        if report["verdict"] == "SAT":
            assert check(h, labeling_from_dict(report["artifact"]))


def test_solve_input_errors(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "solve", str(bad), "--mode", "color-4")[0] == 2
    assert run(capsys, "solve", str(tmp_path / "missing.json"), "--mode", "color-4")[0] == 2
    tri = tmp_path / "tri.json"
    tri.write_text(graph_to_json(SignedGraph.from_edges(3, [(0, 1), (1, 2), (0, 2)])))
    assert run(capsys, "solve", str(tri), "--mode", "two-factors")[0] == 2  # not cubic
    assert run(capsys, "solve", str(tri), "--mode", "color")[0] == 2  # no --k
    assert run(capsys, "solve", str(tri), "--mode", "paint")[0] == 2


def test_verify_default(capsys):
    code, out, _ = run(capsys, "verify-counterexample")
    report = json.loads(out)
    assert code == 0
    assert report["verdicts"] == {
        "two-factors": "UNSAT",
        "strong-label": "UNSAT",
        "weak-label": "UNSAT",
        "triangulation": "OK",
        "coloring": "SKIPPED",
    }
    assert report["counts"]["two_factors_examined"] == 960
    assert report["counts"]["triangulation_vertices"] == 61
    assert report["contradictions"] == [] and report["divergences"] == []


def test_verify_single_stage_and_determinism(capsys):
    a = json.loads(run(capsys, "verify-counterexample", "--stage", "two-factors")[1])
    b = json.loads(run(capsys, "verify-counterexample", "--stage", "two-factors")[1])
    a.pop("wall_time"), b.pop("wall_time")
    assert a == b
    assert a["verdicts"] == {"two-factors": "UNSAT"}


def test_verify_tampered(capsys):
    code, out, _ = run(capsys, "verify-counterexample", "--flip", "4", "--flip", "5")
    report = json.loads(out)
    assert code == 1
    assert report["divergences"] and not report["contradictions"]
    assert report["verdicts"]["two-factors"] == report["verdicts"]["strong-label"] == "SAT"
    code, out, _ = run(capsys, "verify-counterexample", "--flip", "4")
    assert code == 1
    assert json.loads(out)["verdicts"]["weak-label"] == "PRECONDITION"
    assert run(capsys, "verify-counterexample", "--flip", "99")[0] == 2


def test_export_formats(capsys, tmp_path):
    tutte, _ = construct(capsys, tmp_path, "tutte-signed")
    code, dot, _ = run(capsys, "export", str(tutte), "--format", "dot")
    assert code == 0 and dot.startswith("graph")
    code, js, _ = run(capsys, "export", str(tutte), "--format", "json")
    assert js == tutte.read_text()
    # vertex signs would be lost in graph6
    assert run(capsys, "export", str(tutte), "--format", "graph6")[0] == 2
    k4 = tmp_path / "k4.json"
    k4.write_text(graph_to_json(tetrahedron()))
    code, g6, _ = run(capsys, "export", str(k4), "--format", "graph6", "--underlying")
    assert (code, g6) == (0, "C~\n")


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "signedcolor", "construct", "gadget:5"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["n"] == 11
