import csv
import io
import json
from pathlib import Path

import pytest

from partition_topology.engine.errors import InvalidInputError
from partition_topology.metrics import ClaimResult, VerificationReport
from partition_topology.output import format_table, render_report, write_json, write_report


def _report() -> VerificationReport:
    ok = ClaimResult(claim_id="homology Delta_(1,2,1)", anchor="wedge of beta(c) spheres", start_ts=0.0)
    ok.finish("pass", witness={"betti": {"1": 5}, "torsion": {}})
    bad = ClaimResult(claim_id="mobius Pi*_(2,1,1)", anchor="mu = (-1)^k beta(c)", start_ts=0.0)
    bad.finish("fail", witness={"mu": 2, "expected": -3}, error_reason="mu differs")
    return VerificationReport(suite="all", max_n=4, claims=[ok, bad])


def test_format_table_aligns_columns():
    text = format_table(["d", "beta"], [["(1,2,1)", 5], ["(3,1)", 3]])
    lines = text.splitlines()

    assert lines[0] == "d        beta"
    assert lines[1] == "-------  ----"
    assert lines[2] == "(1,2,1)  5"
    assert lines[3] == "(3,1)    3"


def test_render_json_report_round_trips():
    data = json.loads(render_report(_report(), "json"))

    assert data["summary"]["fail"] == 1
    assert data["claims"][0]["witness"] == {"betti": {"1": 5}, "torsion": {}}


def test_render_csv_report_has_one_row_per_claim():
    rows = list(csv.DictReader(io.StringIO(render_report(_report(), "csv"))))

    assert [r["status"] for r in rows] == ["pass", "fail"]
    assert rows[1]["error_reason"] == "mu differs"
    assert json.loads(rows[1]["witness"]) == {"mu": 2, "expected": -3}
    assert rows[0]["error_reason"] == ""


def test_render_table_report_ends_with_summary():
    text = render_report(_report(), "table")

    assert "PASS" in text
    assert "FAIL" in text
    assert text.splitlines()[-1].startswith("REPORT: suite=all | max_n=4 | total=2")


def test_render_report_rejects_unknown_format():
    with pytest.raises(InvalidInputError):
        render_report(_report(), "xml")


def test_write_report_and_json_create_parent_dirs(tmp_path: Path):
    out = tmp_path / "runs" / "n4" / "report.json"
    write_report(out, _report(), "json")
    assert json.loads(out.read_text(encoding="utf-8"))["suite"] == "all"

    extra = tmp_path / "nested" / "data.json"
    write_json(extra, {"betti": [0, 11]})
    assert json.loads(extra.read_text(encoding="utf-8")) == {"betti": [0, 11]}
