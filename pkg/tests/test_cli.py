import json
import subprocess
import sys
from fractions import Fraction

import pytest

from thuecm import cli
from thuecm.instances import (BUNDLED, emit_document, elem_from_coords, load_document, parse_document,
                              parse_instance, write_instance)
from thuecm.solver import SolutionSet

import cases


def write(tmp_path, doc, name="inst.json"):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


@pytest.mark.parametrize("name", BUNDLED)
def test_round_trip(name, tmp_path):
    doc = emit_document(parse_instance(name))
    again = emit_document(parse_document(json.loads(json.dumps(doc))))
    assert again == doc
    write_instance(parse_document(doc), tmp_path / "x.json")
    assert emit_document(parse_instance(tmp_path / "x.json")) == doc


def test_bundled_match_builders():
    assert emit_document(parse_instance("example3.json"))["form"] == emit_document(cases.example3())["form"]
    assert emit_document(parse_instance("example4.json"))["rhs_b"] == ["-4", "3"]


def test_solve_example3(capsys):
    assert cli.main(["solve", "example3.json"]) == cli.EXIT_OK
    out = capsys.readouterr().out
    assert "solutions (4):" in out and "complete: true" in out


def test_bounds_phi5(capsys):
    assert cli.main(["bounds", "phi5.json", "--json", "-"]) == cli.EXIT_OK
    out = capsys.readouterr().out
    report = json.loads(out[out.index("{"):])
    assert report["bounds"]["omega1_exact"] == "32" and report["bounds"]["omega2_exact"] == "32"
    assert report["bounds"]["case"] == "both-unit-lead"
    assert report["bounds"]["count_bound"] == "80"          # 2 w n, w = 10, n = 4


def test_oracle_example4(tmp_path):
    out = tmp_path / "r.json"
    assert cli.main(["oracle", "example4.json", "--box", "4", "--json", str(out)]) == cli.EXIT_OK
    rep = json.loads(out.read_text())
    assert rep["solutions"] == [{"x": ["0", "0"], "y": ["-1", "0"]}, {"x": ["0", "0"], "y": ["1", "0"]}]
    assert rep["complete"] is False


def test_certify_mode(capsys):
    assert cli.main(["certify", "example4.json"]) == cli.EXIT_OK
    assert "instance certified" in capsys.readouterr().out


def test_report_json_is_reverifiable(tmp_path):
    out = tmp_path / "r.json"
    assert cli.main(["solve", "example4.json", "--check", "--json", str(out)]) == cli.EXIT_OK
    rep = json.loads(out.read_text())
    assert json.loads(json.dumps(rep)) == rep
    inst = parse_instance("example4.json")
    for s in rep["solutions"]:
        x, y = elem_from_coords(inst.K, s["x"]), elem_from_coords(inst.K, s["y"])
        assert inst.F(x, y) == inst.b
    assert rep["check"]["agree"] and rep["bounds_hold"]
    assert rep["certificate"]["lambda_strata"] == {"1": 6, "2": 0, "4": 0}
    assert Fraction(rep["bounds"]["omega1_upper"]) > 438246


def test_usage_errors(tmp_path, capsys):
    assert cli.main(["solve", str(tmp_path / "missing.json")]) == cli.EXIT_USAGE
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert cli.main(["solve", str(bad)]) == cli.EXIT_USAGE
    doc = load_document("example3.json")
    del doc["rhs_b"]
    assert cli.main(["solve", write(tmp_path, doc)]) == cli.EXIT_USAGE
    doc = load_document("example3.json")
    doc["schema_version"] = 99
    assert cli.main(["solve", write(tmp_path, doc)]) == cli.EXIT_USAGE
    doc = load_document("example3.json")
    doc["rhs_b"] = [1, 0.5]
    assert cli.main(["solve", write(tmp_path, doc)]) == cli.EXIT_USAGE
    doc = load_document("example3.json")
    doc["rhs_b"] = ["1"]
    assert cli.main(["solve", write(tmp_path, doc)]) == cli.EXIT_USAGE
    with pytest.raises(SystemExit) as exc:
        cli.main(["frobnicate", "example3.json"])
    assert exc.value.code == cli.EXIT_USAGE


def test_invariant_errors(tmp_path):
    doc = load_document("example3.json")
    doc["form"]["coefficients"][1] = ["1/2", "0"]
    assert cli.main(["solve", write(tmp_path, doc)]) == cli.EXIT_INVARIANT
    doc = load_document("example3.json")
    doc["rhs_b"] = ["0", "0"]
    assert cli.main(["solve", write(tmp_path, doc)]) == cli.EXIT_INVARIANT
    doc = load_document("example3.json")
    doc["base_field"]["min_poly"] = ["-4", "0", "1"]          # reducible
    assert cli.main(["solve", write(tmp_path, doc)]) == cli.EXIT_INVARIANT


def test_certification_error(tmp_path):
    doc = load_document("example3.json")
    doc["cm_factor_g"] = [["2", "0"], ["0", "0"], ["1", "0"]]
    assert cli.main(["certify", write(tmp_path, doc)]) == cli.EXIT_CERTIFICATION


def test_budget_exit_code(tmp_path, capsys):
    doc = load_document("example4.json")
    doc["options"]["enumeration_budget"] = "1"
    assert cli.main(["solve", write(tmp_path, doc)]) == cli.EXIT_INCOMPLETE
    assert "complete: false" in capsys.readouterr().out


def test_check_mismatch(monkeypatch, capsys):
    def empty(inst, jobs=1, progress=None):
        return SolutionSet([], True, {}, inst.F, inst.b)
    monkeypatch.setattr(cli, "solve_thue", empty)
    assert cli.main(["solve", "example3.json", "--check", "--box", "2"]) == cli.EXIT_CHECK_MISMATCH
    assert "MISMATCH" in capsys.readouterr().out


def test_flags(capsys):
    assert cli.main(["solve", "example4.json", "--strict-paper-mode", "--jobs", "2",
                     "--precision", "128", "--json", "-"]) == cli.EXIT_OK
    out = capsys.readouterr().out
    rep = json.loads(out[out.index("{"):])
    assert rep["certificate"]["divisors_scanned"] == [1, 2, 4, 8, 16]
    assert cli.main(["solve", "example4.json", "--precision", "4"]) == cli.EXIT_USAGE


def test_decimal_up():
    assert cli.decimal_up(Fraction(1, 3), 4) == "0.3334"
    assert cli.decimal_up(Fraction(-1, 3), 4) == "-0.3333"
    assert cli.decimal_up(Fraction(32), 2) == "32.00"


def test_entry_point_subprocess():
    r = subprocess.run([sys.executable, "-m", "thuecm.cli", "--version"], capture_output=True, text=True)
    assert r.returncode == 0 and "thuecm" in r.stdout
