from __future__ import annotations

import json
import subprocess
import sys

import pydot
import pytest

from braidgraph.cli import _join_negative_values, run


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_words(capsys):
    code, out, _ = call(capsys, "words", "--type", "A", "--n", "4", "--element", "w0")
    assert code == 0
    assert len(out.split()) == 16 and out.split()[0] == "121321"


def test_negative_element(capsys):
    code, out, _ = call(capsys, "words", "--type", "B", "--n", "3", "--element", "-3,-2,-1")
    assert (code, out) == (0, "010210\n012010\n")
    code, out, _ = call(capsys, "words", "--type", "B", "--n", "3", "--element=-3,-2,-1")
    assert (code, out) == (0, "010210\n012010\n")
    assert _join_negative_values(["--element", "w0", "--quiet"]) == ["--element", "w0", "--quiet"]


def test_graph_dot(capsys, tmp_path):
    target = tmp_path / "a4.dot"
    code, out, _ = call(capsys, "graph", "--type", "A", "--n", "4", "--element", "w0",
                        "--format", "dot", "-o", str(target))
    assert code == 0 and out == ""
    (g,) = pydot.graph_from_dot_data(target.read_text())
    assert len(g.get_edges()) == 18
    assert len([n for n in g.get_nodes() if n.get_name().strip('"').isdigit()]) == 16


def test_graph_json(capsys):
    code, out, _ = call(capsys, "graph", "--type", "A", "--n", "4", "--element", "3412", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["stats"] == {"vertexCount": 2, "edgeCount": 1}


def test_diameter(capsys):
    assert call(capsys, "diameter", "--type", "B", "--n", "3", "--element", "w0", "--mode", "exact")[:2] == (0, "13\n")
    assert call(capsys, "diameter", "--type", "A", "--n", "4", "--mode", "theorem")[:2] == (0, "7\n")
    code, _, err = call(capsys, "diameter", "--type", "A", "--n", "4", "--element", "3412", "--mode", "theorem")
    assert code == 2 and "3412" in err
    code, out, _ = call(capsys, "diameter", "--type", "A", "--n", "4", "--element", "4231",
                        "--all-pairs-limit", "1", "--workers", "1")
    assert (code, out) == (0, ">= 4 (not exhaustive; upper bound 5)\n")


def test_accessible(capsys):
    code, out, _ = call(capsys, "accessible", "--type", "A", "--n", "4", "--element", "w0", "--all-sources")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "4 of 16 words are not accessible"
    assert {ln.split()[0] for ln in lines[1:]} == {"213213", "231231", "132132", "312312"}
    code, out, _ = call(capsys, "accessible", "--type", "A", "--n", "4", "--source", "213213")
    assert code == 0 and "not accessible" in out
    code, out, _ = call(capsys, "accessible", "--type", "A", "--n", "4")
    assert (code, out) == (0, "121321 accessible\n")


def test_canonical_distance_flats_formulas(capsys):
    code, out, _ = call(capsys, "canonical", "--type", "A", "--n", "6", "--element", "316425")
    assert (code, out) == (0, "213543\nH23 H13 H24 H56 H26 H46\n")
    code, out, _ = call(capsys, "distance", "--type", "A", "--n", "4", "--format", "json")
    doc = json.loads(out)
    assert doc["source"] == "121321" and doc["eccentricity"] == 7
    assert all(r["gap"] == 0 for r in doc["rows"])
    code, out, _ = call(capsys, "flats", "--type", "A", "--n", "4", "--element", "3412")
    assert out.splitlines()[0] == "2 flats"
    code, out, _ = call(capsys, "formulas", "--family", "D", "--n", "4", "--format", "json")
    assert json.loads(out) == [{"family": "D", "parameter": 4, "closed_form": 34, "geometric": 34}]
    code, out, _ = call(capsys, "formulas", "--format", "json")
    assert {r["family"] for r in json.loads(out)} >= {"A", "B", "D", "E8", "I2"}


def test_conjecture_jsonl(capsys):
    code, out, _ = call(capsys, "conjecture", "--type", "A", "--n", "4", "--format", "json", "--workers", "1")
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and len(rows) == 24 and all(r["passed"] for r in rows)


@pytest.mark.parametrize("argv,code", [
    (["words", "--type", "A", "--n", "1"], 2),
    (["words", "--type", "A", "--n", "4", "--element", "1224"], 2),
    (["words", "--n", "4"], 2),
    (["distance", "--type", "A", "--n", "4", "--source", "123123"], 2),
    (["words", "--type", "A", "--n", "4", "--format", "dot"], 2),
    (["words", "--type", "A", "--n", "7", "--budget", "1000"], 3),
])
def test_exit_codes(capsys, argv, code):
    assert run(argv) == code
    _, err = capsys.readouterr()
    assert err.startswith("braidgraph:")


def test_argparse_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        run(["words", "--type", "C", "--n", "3"])
    assert exc.value.code == 2


def test_environment_overrides(capsys, monkeypatch):
    monkeypatch.setenv("BRAIDGRAPH_BUDGET", "100")
    assert run(["words", "--type", "A", "--n", "6"]) == 3
    assert "100" in capsys.readouterr().err
    monkeypatch.setenv("BRAIDGRAPH_BUDGET", "lots")
    assert run(["words", "--type", "A", "--n", "3"]) == 2


def test_byte_identical_outputs(capsys):
    argv = ["conjecture", "--type", "B", "--n", "3", "--quiet"]
    first = call(capsys, *argv, "--workers", "1")[1]
    again = call(capsys, *argv, "--workers", "1")[1]
    parallel = call(capsys, *argv, "--workers", "2")[1]
    assert first == again == parallel
    dot = ["graph", "--type", "A", "--n", "5", "--format", "dot"]
    assert call(capsys, *dot)[1] == call(capsys, *dot)[1]
    d1 = call(capsys, "diameter", "--type", "A", "--n", "5", "--workers", "1")[1]
    d2 = call(capsys, "diameter", "--type", "A", "--n", "5", "--workers", "2")[1]
    assert d1 == d2 == "25\n"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "braidgraph", "diameter", "--type", "B", "--n", "3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "13\n"
