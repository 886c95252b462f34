import json
import subprocess
import sys

import pytest

from blattnergf.cli import main, parse_algebra, parse_indices, parse_weight
from blattnergf.known import PRODUCT_FORMS
from blattnergf.positivity import known_certificates


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def test_blattner_g2_zero(capsys):
    data = run_json(capsys, "blattner", "--type", "G", "--rank", "2", "--compact", "", "--delta", "0", "--mu", "-1,-1")
    assert data["B"] == "0"
    assert data["gradation"] == {"family": "G", "rank": 2, "compact": []}


def test_blattner_values(capsys):
    data = run_json(capsys, "blattner", "--type", "G2", "--mu", "0")
    assert data["B"] == "1"
    data = run_json(capsys, "blattner", "--type", "sl5", "--mu", "-1,-2,-2,-1")
    assert data["B"] == "-1"
    data = run_json(capsys, "blattner", "--type", "G2", "--compact", "beta", "--mu", "0,-1")
    assert data["B"] == "-1"
    assert data["gradation"]["compact"] == [2]


def test_blattner_normalizes_delta(capsys):
    data = run_json(capsys, "blattner", "--type", "G2", "--delta", "-1,-1", "--mu", "0")
    assert data["normalized_delta"] == ["0", "0"] and data["sign"] == -1
    assert data["B"] == "-1"
    data = run_json(capsys, "blattner", "--type", "G2", "--delta", "-1,-2", "--mu", "0")
    assert data["B"] == "0" and data["normalized_delta"] is None


def test_bseries_sl2(capsys):
    data = run_json(capsys, "bseries", "--type", "A", "--rank", "1", "--compact", "", "--delta", "0", "-N", "5")
    terms = data["series"]["terms"]
    assert [t["k"] for t in terms] == [[k] for k in range(6)]
    assert all(t["c"] == "1" for t in terms)


def test_bseries_methods_agree(capsys):
    a = run_json(capsys, "bseries", "--type", "B2", "--delta", "0", "-N", "6")
    b = run_json(capsys, "bseries", "--type", "B2", "--delta", "0", "-N", "6", "--method", "direct")
    assert a["series"] == b["series"]


def test_bseries_csv(capsys):
    code, out, _ = run(capsys, "bseries", "--type", "G2", "-N", "2", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["k,l,coefficient", "0,0,1", "1,0,1", "0,1,1", "2,0,1", "0,2,1"]


def test_scan_sl5(capsys):
    data = run_json(capsys, "scan", "--type", "A", "--rank", "4", "--compact", "", "-N", "8")
    assert data["verdict"] == "negative"
    assert data["witness"] == {"k": [1, 2, 2, 1], "c": "-1"}


def test_scan_positive(capsys):
    data = run_json(capsys, "scan", "--type", "so8", "-N", "6")
    assert data["algebra"] == "D4" and data["verdict"] == "nonnegative"


def test_roots_and_grade(capsys):
    data = run_json(capsys, "roots", "--type", "G2")
    assert data["positive_roots"] == [[1, 0], [0, 1], [1, 1], [1, 2], [1, 3], [2, 3]]
    data = run_json(capsys, "grade", "--type", "G2", "--compact", "2")
    assert data["W_c_order"] == 2
    assert sorted(data["compact_positive"]) == [[0, 1], [2, 3]]


def test_classify_catalog(capsys):
    data = run_json(capsys, "classify", "--catalog", "A3,A4,sp8,G2", "-N", "10")
    assert data["b_positive"] == ["A3", "G2"]
    c4 = next(e for e in data["entries"] if e["algebra"] == "C4")
    assert c4["report"]["witness"] == {"k": [1, 3, 3, 2], "c": "-1"}


def test_certify_known(capsys):
    data = run_json(capsys, "certify", "--known", "G2,D4", "-N", "12")
    assert [r["name"] for r in data["results"]] == ["G2", "D4"]
    assert all(r["ok"] for r in data["results"])


def test_certify_from_file(capsys, tmp_path):
    good = known_certificates()["B2"].to_json()
    bad = json.loads(json.dumps(good))
    bad["summands"][1]["shift"] = [1, 1]
    path = tmp_path / "certs.json"
    path.write_text(json.dumps([good, bad]))
    data = run_json(capsys, "certify", "--cert", str(path), "-N", "8")
    ok, broken = data["results"]
    assert ok["ok"] and not broken["ok"]
    assert "mismatch" in broken


def test_out_file(capsys, tmp_path):
    path = tmp_path / "g2.svg"
    code, out, _ = run(capsys, "plot", "--type", "G2", "--window", "3,3", "--out", str(path))
    assert code == 0 and out == ""
    assert path.read_text().startswith("<?xml")


@pytest.mark.parametrize("argv", [
    ["blattner", "--type", "G2", "--mu", "1,x"],
    ["blattner", "--type", "G2", "--mu", "1,2,3"],
    ["blattner", "--type", "Q2", "--mu", "0"],
    ["blattner", "--type", "G", "--mu", "0"],
    ["blattner", "--type", "G2", "--rank", "3", "--mu", "0"],
    ["blattner", "--type", "G2", "--compact", "3", "--mu", "0"],
    ["blattner", "--type", "G2", "--mu", "1/2,0"],
    ["bseries", "--type", "G2", "-N", "0"],
    ["scan", "--type", "G2", "--compact", "1"],
    ["plot", "--type", "A3"],
    ["plot", "--type", "G2", "--window", "200,200"],
    ["certify", "--known", "E8"],
])
def test_validation_exit_code(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and err.startswith("error:")


def test_bound_exit_code(capsys, monkeypatch):
    from functools import partial

    from blattnergf import cli

    monkeypatch.setattr(cli.bl, "Gradation", partial(cli.bl.Gradation, bound=3))
    code, out, err = run(capsys, "grade", "--type", "B3")
    assert code == 3 and out == "" and err.startswith("error:")


def test_parsers():
    assert parse_algebra("so7", None) == ("B", 3)
    assert parse_algebra("sp8", None) == ("C", 4)
    assert parse_algebra("so8", None) == ("D", 4)
    assert parse_algebra("g2", None) == ("G", 2)
    assert parse_weight("0", 3) == (0, 0, 0)
    assert parse_weight("-1, 1/2", 2) == (-1, 0.5)
    assert parse_indices("alpha,2", 2) == [0, 1]
    assert parse_indices("", 4) == []
    assert parse_indices("a3", 4) == [2]


def test_console_script_deterministic():
    cmd = [sys.executable, "-m", "blattnergf", "bseries", "--type", "G2", "--compact", "beta", "-N", "6"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and json.loads(a)["series"]["terms"][0] == {"k": [0, 0], "c": "1"}


def test_csv_matches_library(capsys):
    from blattnergf.series import expand

    code, out, _ = run(capsys, "bseries", "--type", "G2", "-N", "8", "--format", "csv")
    s = expand(PRODUCT_FORMS["G2"], 8)
    rows = [line.split(",") for line in out.splitlines()[1:]]
    assert {(int(k), int(l)): int(c) for k, l, c in rows} == s.terms
