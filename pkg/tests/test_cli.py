import csv
import json

import pytest

from polyknot.cli import main

S4 = ("t(t^2 - 6.431)(t^2 - 15.91)",
      "t(t^2 - 0.18)(t^2 - 2.4899)(t^2 - 17.458)(t^2 - 16.15)(t^2 - 14.8)(t^2 - 11)",
      "(t + 4.138362)(t + 3.86)(t + 2.416735)(t + 1.2)(t)(t - 2.416735)(t - 1.2)(t - 3.86)(t - 4.138362)")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_degree_bound(capsys):
    code, out, _ = run(capsys, "degree-bound", "3", "7", "7")
    assert code == 0 and out.strip() == "(5, 8, ≤41), r0=1"


def test_degree_bound_json(capsys):
    code, out, _ = run(capsys, "--json", "degree-bound", "2", "5", "0")
    assert json.loads(out) == {"l": 3, "m": 7, "n_max": 9, "r0": 2}


def test_domain_error_exit_code(capsys):
    code, _, err = run(capsys, "degree-bound", "2", "4", "0")
    assert code == 1 and "NotCoprime" in err


def test_usage_error_prints_grammar(capsys):
    with pytest.raises(SystemExit) as ei:
        main(["degree-bound", "3"])
    assert ei.value.code == 2
    assert "polynomial grammar" in capsys.readouterr().err


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "analyze", "t^3 +", "t", "t")
    assert code == 2 and "position 5" in err


def test_analyze_unknot(capsys):
    code, out, _ = run(capsys, "--json", "analyze", "t", "t^2", "t^3")
    res = json.loads(out)
    assert code == 0 and res["crossings"] == 0 and res["unknot_candidate"]


def test_analyze_section4(capsys):
    code, out, _ = run(capsys, "--json", "analyze", *S4)
    res = json.loads(out)
    assert res["crossings"] == 14
    assert "8_17" in [m["name"] for m in res["identified_as"]]


def test_invariants(capsys):
    code, out, _ = run(capsys, "--json", "invariants", *S4)
    assert code == 0 and json.loads(out)["determinant"] == 37


def test_verify_one(capsys):
    code, out, _ = run(capsys, "verify-catalog", "8_17")
    assert code == 0 and "verified" in out


def test_verify_unknown_name(capsys):
    code, _, _ = run(capsys, "verify-catalog", "9_1")
    assert code == 1


def test_construct_and_export(capsys, tmp_path):
    knot = tmp_path / "trefoil.json"
    code, out, _ = run(capsys, "--json", "construct", "p=2; s1 s1 s1", "-o", str(knot))
    data = json.loads(out)
    assert code == 0 and data["degrees"][:2] == [3, 4] and data["crossings"] == 3
    for fmt in ("csv", "json", "obj"):
        dest = tmp_path / f"out.{fmt}"
        code, _, _ = run(capsys, "export", str(knot), "--points", "1000", "--format", fmt,
                         "-o", str(dest))
        assert code == 0
    rows = list(csv.reader((tmp_path / "out.csv").open()))
    assert len(rows) == 1001 and rows[0] == ["t", "x", "y", "z"]
    obj = (tmp_path / "out.obj").read_text().splitlines()
    assert sum(l.startswith("v ") for l in obj) == 1000 and obj[-1].startswith("l 1 2 ")
    js = json.loads((tmp_path / "out.json").read_text())
    assert len(js["samples"]) == 1000 and js["columns"] == ["t", "x", "y", "z"]


def test_export_rejects_single_point(capsys, tmp_path):
    knot = tmp_path / "k.json"
    knot.write_text(json.dumps({"f": "t^3 - 3t", "g": "t^4 - 4t^2", "h": "t"}))
    code, _, err = run(capsys, "export", str(knot), "--points", "1")
    assert code == 1 and "npoints" in err
