import csv
import io
import json
import subprocess
import sys

import pytest

from pauligeom.cli import run


def call(*argv):
    buf = io.StringIO()
    code = run(list(argv), stdout=buf)
    return code, buf.getvalue()


def test_census_text_n3():
    code, out = call("census", "--qubits", "3")
    assert code == 0
    for count in ("315", "336", "630", "1008", "378"):
        assert count in out
    assert out.rstrip().endswith("PASS")


def test_census_json_schema():
    code, out = call("census", "-n", "2", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    rows = doc["results"]["veldkamp_lines"]
    assert [r["count"] for r in rows] == [15, 20, 45, 60, 15]
    for r in rows:
        assert {"type", "composition", "core_size", "count", "formula_value", "match"} <= set(r)
        assert r["match"] is True and r["count"] == r["formula_value"]


def test_census_csv():
    code, out = call("census", "-n", "3", "--format", "csv")
    assert code == 0 and "\r" not in out
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["n", "type", "composition", "core_size", "count"]
    assert rows[1] == ["3", "CCC-isotropic", "3/0/0", "15", "315"]
    assert len(rows) == 6


def test_census_csv_n1_header_only():
    code, out = call("census", "-n", "1", "--format", "csv")
    assert code == 0 and out == "n,type,composition,core_size,count\n"


def test_hyperplanes_json():
    code, out = call("hyperplanes", "-n", "2", "--kind", "H1", "--format", "json")
    hs = json.loads(out)["results"]["hyperplanes"]
    assert code == 0 and len(hs) == 6
    for h in hs:
        assert set(h) == {"kind", "p", "arf", "size", "points"}
        assert h["arf"] == 1 and h["size"] == len(h["points"]) == 5


def test_veldkamp_json():
    code, out = call("veldkamp", "-n", "2", "-a", "C:IX", "-b", "C:XI", "--format", "json")
    line = json.loads(out)["results"]["veldkamp_line"]
    assert code == 0
    assert line == {"type": "CCC-isotropic", "members": ["C:IX", "C:XI", "C:XX"],
                    "core_size": 3, "core": ["IX", "XI", "XX"]}


def test_orbits_json():
    code, out = call("orbits", "-n", "2", "--format", "json")
    orbits = json.loads(out)["results"]["orbits"]
    assert code == 0 and sorted(map(len, orbits)) == [6, 10, 15]
    assert all(isinstance(k, str) for o in orbits for k in o)


def test_swap_prints_labels():
    code, out = call("swap", "-n", "3", "-a", "IXX", "-b", "XIX", "-f", "ZZI")
    assert code == 0 and "t_XXY t_IIY" in out


def test_mermin_all():
    code, out = call("mermin", "-n", "2", "--all", "--format", "json")
    squares = json.loads(out)["results"]["squares"]
    assert code == 0 and len(squares) == 10
    assert all(s["negative_line_count"] % 2 == 1 for s in squares)


def test_gq_and_wootters():
    assert call("gq", "-n", "2")[0] == 0
    code, out = call("wootters", "-n", "3")
    assert code == 0 and "GQ(2,4)" in out


def test_verify_exhaustive_n2_reports_v2_counterexample():
    code, out = call("verify", "--qubits", "2", "--exhaustive", "--format", "json")
    assert code == 0
    claims = {c["id"]: c for c in json.loads(out)["results"]["claims"]}
    v2 = claims["v2-axiom"]
    assert v2["result"] == "pass"
    assert v2["details"]["holds"] is False and v2["details"]["counterexample"]["pentad_sizes"] == [5, 5]
    assert claims["h1-exhaustive-search"]["details"]["h1_sets"] == 32


def test_export_dot_and_lines(tmp_path):
    path = tmp_path / "g.dot"
    code, out = call("export", "-n", "2", "--what", "graph", "--format", "dot", "--out", str(path))
    assert code == 0 and out == ""
    dot = path.read_text()
    assert dot.startswith("graph collinearity {") and dot.count("--") == 45
    assert '[label="YY"]' in dot
    code, out = call("export", "-n", "2", "--what", "lines", "--format", "csv")
    assert code == 0 and out.splitlines()[0] == "a,b,c" and len(out.splitlines()) == 16


def test_json_is_deterministic():
    a = call("verify", "-n", "2", "--seed", "5", "--format", "json")
    b = call("verify", "-n", "2", "--seed", "5", "--format", "json")
    assert a == b and a[0] == 0


@pytest.mark.parametrize("argv", [
    ["frobnicate", "-n", "2"],
    ["census"],
    ["census", "-n", "9"],
    ["census", "-n", "two"],
    ["census", "-n", "2", "--format", "xml"],
    ["census", "-n", "2", "--format", "dot"],
    ["mermin", "-n", "3"],
    ["verify", "-n", "3", "--exhaustive"],
    ["verify", "-n", "2", "--seed", "-1"],
    ["verify", "-n", "2", "--limit", "0"],
    ["veldkamp", "-n", "2", "-a", "C:IX"],
    ["veldkamp", "-n", "2", "-a", "C:IX", "-b", "C:XXX"],
    ["swap", "-n", "3", "-a", "IXX", "-b", "IXX", "-f", "ZZI"],
    [],
])
def test_usage_errors_exit_2(argv, capsys):
    assert run(argv, stdout=io.StringIO()) == 2
    assert "error" in capsys.readouterr().err


def test_claim_failure_exits_1(monkeypatch):
    import pauligeom.cli as cli
    from pauligeom.claims import ClaimResult

    monkeypatch.setattr(cli, "run_claims", lambda n, opts: [ClaimResult("x", "always fails", False)])
    code, out = call("verify", "-n", "2")
    assert code == 1 and "FAIL" in out


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "pauligeom", "census", "-n", "2", "--format", "csv"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.startswith("n,type")
    out = subprocess.run([sys.executable, "-m", "pauligeom", "census", "-n", "0"], capture_output=True, text=True)
    assert out.returncode == 2
