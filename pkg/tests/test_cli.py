import io
import json
import subprocess
import sys

import pytest

from gkmhess.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_star_condition():
    assert run("star-condition", "--h", "2,3,3") == (0, "true\n")
    assert run("star-condition", "--h", "3,3,4,4") == (0, "false\n")


def test_betti():
    assert run("cohomology", "betti", "--h", "3,3,3") == (0, "[1,2,2,1]\n")


def test_aut_count():
    assert run("aut", "enumerate", "--h", "3,3,4,4", "--count-only") == (0, "24\n")
    assert run("aut", "enumerate", "--h", "2,3,3", "--count-only") == (0, "12\n")


def test_aut_enumerate_json():
    code, text = run("aut", "enumerate", "--h", "2,3,3")
    data = json.loads(text)
    assert code == 0 and len(data) == 12
    assert set(data[0]) == {"vertex_map", "lattice_map"}


def test_aut_star_full_flag():
    code, text = run("aut", "star", "--h", "3,3,3", "--max-degree", "3")
    assert code == 0 and len(json.loads(text)) == 6
    code, text = run("aut", "star", "--h", "2,3,3", "--max-degree", "2")
    assert len(json.loads(text)) == 1


def test_build_validate_round_trip(tmp_path):
    path = tmp_path / "g.json"
    assert run("graph", "build", "--h", "2,3,4,4", "--out", str(path))[0] == 0
    code, text = run("graph", "validate", "--in", str(path))
    assert code == 0 and json.loads(text)["ok"] is True
    code, again = run("graph", "build", "--h", "2,3,4,4")
    assert again == path.read_text()


def test_validate_reports_failure(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"n_vars": 2, "vertices": ["a", "b", "c"], "edges": [
        {"src": "a", "dst": "b", "label": ["1", "-1"]}]}))
    code, text = run("graph", "validate", "--in", str(path))
    assert code == 1
    assert json.loads(text)["checks"][1]["name"] == "regular"


def test_dot_output():
    code, text = run("graph", "build", "--h", "2,3,3", "--format", "dot")
    assert code == 0 and text.startswith("graph G {") and text.count(" -- ") == 6


def test_equivariant_output():
    code, text = run("cohomology", "equivariant", "--h", "2,3,3", "--degree", "2", "--lattice", "t")
    data = json.loads(text)
    assert data["dimension"] == 6 and len(data["basis"]) == 6
    assert set(data["basis"][0]) == {"123", "132", "213", "231", "312", "321"}


def test_unipotent_sweep_lines():
    code, text = run("unipotent", "sweep", "--n", "3")
    lines = [json.loads(l) for l in text.splitlines()]
    assert code == 0 and len(lines) == 24
    assert all(c["witness"] for c in lines)


def test_verify_small():
    code, text = run("verify", "all", "--n", "3")
    assert code == 0
    assert text.count("PASS") == 9


@pytest.mark.parametrize("argv", [
    ["star-condition", "--h", "3,2,3"],
    ["star-condition", "--h", "a,b"],
    ["frobnicate"],
    ["graph", "validate", "--in", "/nonexistent/file.json"],
    ["graph", "build", "--h", "7,7,7,7,7,7,7"],
    ["cohomology", "betti", "--h", "6,6,6,6,6,6"],
    [],
])
def test_usage_errors(argv, capsys):
    assert run(*argv)[0] == 2


def test_output_is_deterministic():
    a = run("cohomology", "equivariant", "--h", "3,3,3", "--degree", "4", "--lattice", "that")
    b = run("cohomology", "equivariant", "--h", "3,3,3", "--degree", "4", "--lattice", "that")
    assert a == b


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "gkmhess.cli", "star-condition", "--h", "1,2,3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "true\n"
