import json
import subprocess
import sys
from fractions import Fraction

import pytest

from conclab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, out, json.loads(out)


# -- invariants / bing -------------------------------------------------------------


def test_invariants_figure8(capsys):
    code, out, data = run_json(capsys, "invariants", "--name", "figure8")
    assert code == 0
    assert data["fox_milnor"]["holds"] is False
    assert data["algebraically_slice"]["status"] == "NotSlice"
    assert data["algebraically_slice"]["test"] == "fox_milnor"
    code, text, _ = run(capsys, "invariants", "--name", "figure8")
    assert "B(figure8) not boundary slice" in text


def test_invariants_braid_trefoil(capsys):
    code, _, data = run_json(capsys, "invariants", "--braid", "1 1 1")
    assert code == 0
    assert data["signature"]["-1"] == -2
    est = data["signature_integral"]
    err = Fraction(est["error_bound"])
    assert err <= Fraction(1, 100)
    assert abs(Fraction(est["value"]) + Fraction(4, 3)) <= err
    assert data["alexander"] == "t^2 - t + 1"


def test_invariants_unknot(capsys):
    _, _, data = run_json(capsys, "invariants", "--name", "unknot")
    assert data["alexander"] == "1" and data["arf"] == 0
    assert data["signature"] == {"-1": 0, "i": 0}
    assert data["algebraically_slice"]["status"] == "AlgebraicallySlice"


def test_invariants_matrix_file(capsys, tmp_path):
    f = tmp_path / "a.json"
    f.write_text(json.dumps({"seifert_matrix": [[1, 1], [0, -2]]}))
    code, _, data = run_json(capsys, "invariants", "--matrix", str(f))
    assert code == 0 and data["algebraically_slice"]["status"] == "AlgebraicallySlice"


def test_bing_reports(capsys):
    code, out, data = run_json(capsys, "bing", "--name", "trefoil")
    assert code == 0
    assert data["conclusion"] == "B(trefoil) not boundary slice"
    assert set(data["multivar_signature"].values()) == {0}
    assert data["alexander_module"]["verdict"] == "TrivialFree"
    assert data["murasugi_arf"] == 0
    _, _, data = run_json(capsys, "bing", "--name", "unknot")
    assert data["bing_double"]["sizes"] == [0, 0]
    code, _, data = run_json(capsys, "bing", "--name", "stevedore", "--search-bound", "5")
    assert code == 0
    ms = data["metabolic_search"]
    assert ms["knot_verdict"]["status"] == "AlgebraicallySlice" and ms["verified"] is True
    code, text, _ = run(capsys, "bing", "--name", "figure8")
    assert code == 0 and "B(figure8) not boundary slice" in text


# -- exit codes -----------------------------------------------------------------------


@pytest.mark.parametrize("argv,code", [
    (["invariants", "--name", "nope"], 2),
    (["invariants"], 2),
    (["invariants", "--braid", "1 x"], 3),
    (["invariants", "--braid", "1 1"], 2),
    (["tb-grid", "--grid", "nonsense"], 3),
    (["invariants", "--search-bound", "x", "--name", "unknot"], 3),
    (["frobnicate"], 3),
])
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_bad_matrix_file(capsys, tmp_path):
    f = tmp_path / "bad.json"
    f.write_text("[[1, 2], [3")
    assert run(capsys, "invariants", "--matrix", str(f))[0] == 3
    f.write_text("[[2, 0], [0, 2]]")
    assert run(capsys, "invariants", "--matrix", str(f))[0] == 3
    assert run(capsys, "invariants", "--matrix", str(tmp_path / "missing.json"))[0] == 2


def test_corrupt_table_rejected(capsys, tmp_path, monkeypatch):
    f = tmp_path / "table.json"
    f.write_text(json.dumps([{"name": "bad", "seifert_matrix": [[2, 0], [0, 2]]}]))
    monkeypatch.setenv("CONCLAB_TABLE", str(f))
    code, _, err = run(capsys, "verify-paper")
    assert code == 3 and "table" in err
    f.write_text("{not json")
    assert run(capsys, "invariants", "--name", "bad")[0] == 3


def test_table_override(capsys, tmp_path, monkeypatch):
    f = tmp_path / "table.json"
    f.write_text(json.dumps([{"name": "hopfish", "seifert_matrix": [[0, 1], [0, 0]]}]))
    monkeypatch.setenv("CONCLAB_TABLE", str(f))
    code, _, data = run_json(capsys, "invariants", "--name", "hopfish")
    assert code == 0 and data["knot"] == "hopfish"
    assert run(capsys, "invariants", "--name", "trefoil")[0] == 2


# -- JSON contract and determinism ----------------------------------------------------------


@pytest.mark.parametrize("argv", [
    ["invariants", "--name", "trefoil"], ["bing", "--name", "figure8"],
    ["rep-check", "--name", "trefoil", "--other", "figure8"], ["s-calc"],
    ["parse-braid", "--braid", "1 -2 1 -2"], ["tb-grid", "--grid", "5; X=[1,2,3,4,5]; O=[4,5,1,2,3]"],
])
def test_json_round_trip_and_determinism(capsys, argv):
    _, out1, data = run_json(capsys, *argv)
    _, out2, _ = run_json(capsys, *argv)
    assert out1 == out2
    assert json.dumps(data, sort_keys=True) + "\n" == out1


def test_verify_paper(capsys):
    code, out, _ = run(capsys, "verify-paper")
    assert code == 0 and "[FAIL]" not in out and "[PASS]" in out
    code, _, data = run_json(capsys, "verify-paper", "--random", "10", "--seed", "7")
    assert code == 0 and data["ok"] is True


def test_rep_check(capsys):
    code, _, data = run_json(capsys, "rep-check", "--name", "trefoil", "--other", "trefoil")
    assert code == 0
    assert data["hom_dim"] == data["hat_hom_dim"] == 2
    assert data["isomorphic"] == {"other": "trefoil", "base": "Yes", "hat": "Yes",
                                  "hat_witness_valid": True}
    assert run(capsys, "rep-check", "--name", "unknot")[0] == 2


def test_s_calc(capsys, tmp_path):
    _, _, data = run_json(capsys, "s-calc")
    assert data["pairs"] == [[-1, 0], [1, 0], [1, 2]]
    _, _, data = run_json(capsys, "s-calc", "--s-wh", "2", "--s-b", "-1")
    assert data["pairs"] == [] and data["solve"]["status"] == "Inconsistent"
    f = tmp_path / "sys.json"
    f.write_text(json.dumps({"links": [{"name": "U2", "components": 2}],
                             "constraints": [{"type": "PositiveDiagram", "link": "U2",
                                              "crossings": 0, "circles": 2}]}))
    _, _, data = run_json(capsys, "s-calc", "--system", str(f))
    assert data["domains"]["U2"] == {"values": [-1]}
    f.write_text(json.dumps({"links": [], "constraints": [{"type": "Known", "link": "Z",
                                                           "value": 0}]}))
    assert run(capsys, "s-calc", "--system", str(f))[0] == 3


def test_parse_braid_and_tb(capsys):
    _, _, data = run_json(capsys, "parse-braid", "--braid", "1 1 1")
    assert data["rasmussen"] == 2 and data["stats"]["writhe"] == 3
    _, _, data = run_json(capsys, "tb-grid", "--grid", "5; X=[1,2,3,4,5]; O=[4,5,1,2,3]")
    assert data["tb"] == 1


# -- batch --------------------------------------------------------------------------------


def test_batch_preserves_order(capsys, tmp_path):
    lines = [{"name": "trefoil"}, {"braid": "1 -2 1 -2"}, {"name": "nope"},
             {"matrix": [[1, 1], [0, -2]]}, "not json", {"name": "unknot"}]
    f = tmp_path / "jobs.jsonl"
    f.write_text("\n".join(x if isinstance(x, str) else json.dumps(x) for x in lines) + "\n")
    code, out, _ = run(capsys, "invariants", "--batch", str(f))
    rows = [json.loads(x) for x in out.splitlines()]
    assert code == 3 and len(rows) == 6
    assert [r["ok"] for r in rows] == [True, True, False, True, False, True]
    assert rows[0]["result"]["knot"] == "trefoil"
    assert rows[2]["code"] == 2 and rows[4]["code"] == 3
    code2, out2, _ = run(capsys, "invariants", "--batch", str(f), "--jobs", "2")
    assert (code2, out2) == (code, out)


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "conclab", "tb-grid", "--grid",
                        "5; X=[1,2,3,4,5]; O=[4,5,1,2,3]"], capture_output=True, text=True)
    assert r.returncode == 0 and "tb = 1" in r.stdout
