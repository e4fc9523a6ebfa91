from __future__ import annotations

import csv
import io
import json
import subprocess
import sys

import pytest

from vmrtkit.cli import main


def run_json(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_prolong_row(capsys):
    code, rep = run_json(["prolong", "segre:2x2", "--order", "2"], capsys)
    assert code == 0
    assert rep["summary"] == {"pass": 1, "fail": 0, "ok": True}
    assert rep["command"] == ["prolong", "segre:2x2", "--order", "2"]


def test_alias_is_recorded_under_its_canonical_name(capsys):
    code, rep = run_json(["verify-thm11", "--max-rank", "4"], capsys)
    assert code == 0
    assert rep["command"][0] == "extremal-markings"


def test_classify_tube_marking(capsys):
    code, rep = run_json(["classify", "--type", "E7", "--node", "7", "--fixed-points"], capsys)
    row = rep["rows"][0]
    assert code == 0 and row["tube"] and row["expected"]["family"] == "E7/P7"
    assert len(row["fixed_points"]) == 56


def test_csv_output_has_one_line_per_row(capsys):
    assert main(["symbol", "check", "pfaffian:5", "--format", "csv"]) == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert len(rows) == 1 and rows[0]["verdict"] == "PASS" and rows[0]["dims"] == "[1, 10, 5]"


def test_symbol_embed(capsys):
    code, rep = run_json(["symbol", "embed", "minors:2", "--point", "1,2,3,4"], capsys)
    assert code == 0 and rep["rows"][0]["image"] == [1, 1, 2, 3, 4, -2]


def test_bad_spec_becomes_a_failing_row(capsys):
    code, rep = run_json(["prolong", "project(segre:2x2; 1,x,0,0)"], capsys)
    assert code == 1
    assert rep["rows"][0]["verdict"] == "FAIL"
    assert "position 21" in rep["rows"][0]["error"]


def test_unreadable_report_schema_exits_with_status_2(tmp_path, capsys):
    bad = tmp_path / "old.json"
    bad.write_text(json.dumps({"schema": 0, "command": []}))
    assert main(["report", "replay", str(bad)]) == 2
    assert "schema" in capsys.readouterr().err


def test_report_replay(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["symbol", "bracket", "minors:2", "--out", str(out), "--jobs", "2"]) == 0
    assert main(["report", "replay", str(out)]) == 0
    assert json.loads(capsys.readouterr().out)["identical"] is True
    saved = json.loads(out.read_text())
    saved["rows"][0]["c_values"] = ["bogus"]
    out.write_text(json.dumps(saved))
    assert main(["report", "replay", str(out)]) == 1


@pytest.mark.parametrize("argv", [["--help"], ["symbol", "--help"]])
def test_console_entry_point(argv):
    res = subprocess.run([sys.executable, "-m", "vmrtkit", *argv], capture_output=True, text=True)
    assert res.returncode == 0 and "usage" in res.stdout
