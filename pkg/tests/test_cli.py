import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from evk import hypergraph as hg
from evk.cli import main
from evk.regression import ex1_tensor, pc17_hypergraph
from evk.tensor import format_tensor

REPORT_SCHEMA = {
    "type": "object",
    "required": ["m", "n", "weaklyIrreducible", "cyclicIndex", "invariantDivisorsZm", "unitDivisors",
                 "freeRank", "stabilizingIndex", "stabilizingDimension", "generators", "decomposition"],
    "properties": {
        "m": {"type": "integer"},
        "n": {"type": "integer"},
        "weaklyIrreducible": {"type": "boolean"},
        "cyclicIndex": {"type": "integer"},
        "invariantDivisorsZm": {"type": "array", "items": {"type": "integer"}},
        "unitDivisors": {"type": "integer"},
        "freeRank": {"type": "integer"},
        "stabilizingIndex": {"type": "string", "pattern": "^[0-9]+$"},
        "stabilizingDimension": {"type": "integer"},
        "generators": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
        "decomposition": {"type": "string"},
        "perron": {"type": "object", "required": ["rho", "v", "residual"]},
    },
}


@pytest.fixture
def files(tmp_path):
    out = {}
    out["ex1"] = tmp_path / "ex1.tensor"
    out["ex1"].write_text(format_tensor(ex1_tensor()))
    out["ex2"] = tmp_path / "ex2.hg"
    out["ex2"].write_text("hypergraph 3 6\n1 2 3\n2 3 4\n3 4 5\n4 5 6\n1 5 6\n1 2 6\n")
    out["disc"] = tmp_path / "disc.hg"
    out["disc"].write_text("hypergraph 3 6\n1 2 3\n4 5 6\n")
    out["k4"] = tmp_path / "K4_3.hg"
    out["k4"].write_text(hg.format_hypergraph(hg.complete(4, 3)))
    out["bad"] = tmp_path / "bad.hg"
    out["bad"].write_text("hypergraph 3 6\n1 2\n")
    return out


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr()


def test_analyze_ex1_json(files, capsys):
    code, out = run(capsys, "analyze", files["ex1"], "--json")
    assert code == 0
    rep = json.loads(out.out)
    jsonschema.validate(rep, REPORT_SCHEMA)
    assert rep["stabilizingIndex"] == "576" and rep["stabilizingDimension"] == 8
    assert rep["decomposition"] == "Z_2 ⊕ Z_2 ⊕ Z_12 ⊕ Z_12"


def test_analyze_ex2_perron_enumerate(files, capsys):
    code, out = run(capsys, "analyze", files["ex2"], "--perron", "--enumerate", "--json")
    assert code == 0
    rep = json.loads(out.out)
    jsonschema.validate(rep, REPORT_SCHEMA)
    vecs = rep["eigenvectors"]["vectors"]
    assert len(vecs) == 3 and max(v["residual"] for v in vecs) < 1e-8
    assert rep["eigenvectors"]["maxResidual"] < 1e-8
    assert [0, 1, 2, 0, 1, 2] in rep["ps0"]


def test_analyze_table(files, capsys):
    code, out = run(capsys, "analyze", files["ex2"], "--table", "--perron")
    assert code == 0 and "stabilizing index     3" in out.out


def test_large_index_is_string(tmp_path, capsys):
    # m = 12, two edges sharing two vertices: s = 12^19 overflows 64 bits
    p = tmp_path / "big.tensor"
    p.write_text("tensor 12 22\n" + " ".join(map(str, range(1, 13))) + " 1\n" +
                 " ".join(map(str, range(11, 23))) + " 1\n")
    code, out = run(capsys, "analyze", p, "--json")
    rep = json.loads(out.out)
    assert code == 0 and int(rep["stabilizingIndex"]) == 12**19 > 2**63


def test_exit_codes(files, capsys):
    assert run(capsys, "analyze", files["disc"])[0] == 2
    assert run(capsys, "analyze", files["bad"])[0] == 1
    assert run(capsys, "analyze", files["ex1"].parent / "missing.hg")[0] == 1
    assert run(capsys, "bounds", files["disc"])[0] == 2
    assert run(capsys, "bounds", files["ex1"])[0] == 2
    assert run(capsys, "generate", "squid", "3", "9")[0] == 2
    assert run(capsys, "generate", "wheel")[0] == 2
    assert run(capsys, "analyze", files["ex1"], "--enumerate", "10")[0] == 2


def test_exit_code_on_violation(files, capsys, monkeypatch):
    from evk import eigenvariety

    def broken(*a, **k):
        raise eigenvariety.TheoremViolation("forced")

    monkeypatch.setattr("evk.cli.analyze", broken)
    assert run(capsys, "analyze", files["ex2"])[0] == 3


@pytest.mark.parametrize("family,params,n,edges", [
    ("hyperpath", ["4", "3"], 7, 3),
    ("squid", ["3", "2"], 7, 3),
    ("wheel", ["4"], 5, 4),
    ("complete", ["5", "3"], 5, 10),
    ("power", ["3", "4", "1-2", "2-3"], 7, 2),
])
def test_generate_roundtrip(family, params, n, edges, tmp_path, capsys):
    code, out = run(capsys, "generate", family, *params)
    assert code == 0
    G = hg.parse_hypergraph(out.out)
    assert (G.n, len(G.edges)) == (n, edges)
    target = tmp_path / "g.hg"
    assert run(capsys, "generate", family, *params, "--out", target)[0] == 0
    assert target.read_text() == out.out == hg.format_hypergraph(hg.parse_hypergraph(target.read_text()))


def test_bounds(files, tmp_path, capsys):
    code, out = run(capsys, "bounds", files["k4"], "--json")
    rep = json.loads(out.out)
    assert code == 0 and rep["stabilizingIndex"] == "1" and all(r["holds"] for r in rep["rows"])
    p = tmp_path / "p.hg"
    p.write_text(hg.format_hypergraph(hg.hyperpath(3, 3)))
    code, out = run(capsys, "bounds", p, "--json")
    rows = json.loads(out.out)["rows"]
    assert all(r["tight"] for r in rows if r["name"] == "path-cover")
    p.write_text(hg.format_hypergraph(pc17_hypergraph()))
    code, out = run(capsys, "bounds", p)
    assert code == 0 and "pc = 9" in out.out


def test_console_script_verify():
    out = subprocess.run([sys.executable, "-m", "evk.cli", "verify-paper"], capture_output=True, text=True)
    lines = out.stdout.strip().splitlines()
    assert out.returncode == 0, out.stdout + out.stderr
    assert len(lines) == 9 and all(ln.startswith("PASS") for ln in lines)
