import json
import time

import pytest

from partition_topology.metrics import ClaimResult, VerificationReport


def test_finish_sets_end_and_wall_time_and_status(monkeypatch):
    # fixed clock keeps the test deterministic
    t0 = 1000.00
    t1 = 1001.23

    m = ClaimResult(claim_id="beta (1,2,1)", anchor="beta", start_ts=t0)

    monkeypatch.setattr(time, "time", lambda: t1)
    m.finish("pass")

    assert m.end_ts == t1
    assert m.wall_time == round(t1 - t0, 2)
    assert m.status == "pass"
    assert m.error_reason is None


def test_finish_sets_error_reason_and_witness(monkeypatch):
    t0 = 2000.0
    t1 = 2000.5

    m = ClaimResult(claim_id="homology Delta_(1,2,1)", anchor="wedge", start_ts=t0)

    monkeypatch.setattr(time, "time", lambda: t1)
    m.finish("fail", witness={"betti": {"1": 4}}, error_reason="expected a wedge of 5 spheres")

    assert m.status == "fail"
    assert m.witness == {"betti": {"1": 4}}
    assert m.error_reason == "expected a wedge of 5 spheres"
    assert m.wall_time == 0.5


def test_finish_rejects_unknown_status():
    m = ClaimResult(claim_id="x", anchor="y", start_ts=0.0)
    with pytest.raises(ValueError):
        m.finish("maybe")


def test_to_json_returns_valid_json():
    m = ClaimResult(claim_id="Psi on {2,1,_1}, d=(3,1)", anchor="Psi", start_ts=123.0)
    m.finish("skipped", error_reason="split shape: 3 of 3 labels differ term by term")

    obj = json.loads(m.to_json())

    assert obj["claim_id"] == "Psi on {2,1,_1}, d=(3,1)"
    assert obj["status"] == "skipped"
    assert obj["error_reason"].startswith("split shape")
    assert isinstance(obj["start_ts"], (int, float))
    assert isinstance(obj["end_ts"], (int, float))
    assert isinstance(obj["wall_time"], (int, float))


def test_str_contains_key_fields(monkeypatch):
    m = ClaimResult(claim_id="mobius Pi*_(1,2,1)", anchor="mu", start_ts=3000.0)

    monkeypatch.setattr(time, "time", lambda: 3002.0)
    m.finish("fail", error_reason="mu differs")

    s = str(m)
    assert "CLAIM:" in s
    assert "id=mobius Pi*_(1,2,1)" in s
    assert "status=fail" in s
    assert "duration=2.0s" in s
    assert "reason=mu differs" in s


def _result(status: str) -> ClaimResult:
    m = ClaimResult(claim_id=f"claim {status}", anchor="a", start_ts=0.0)
    m.finish(status)
    return m


def test_report_counts_and_exit_code():
    report = VerificationReport(suite="all", max_n=3, claims=[_result("pass"), _result("pass"), _result("skipped")])

    assert (report.passed, report.failed, report.skipped) == (2, 0, 1)
    assert report.exit_code == 0

    report.claims.append(_result("fail"))
    assert report.failed == 1
    assert report.exit_code == 1


def test_report_to_dict_has_summary():
    report = VerificationReport(suite="morse", max_n=4, claims=[_result("pass"), _result("fail")])

    data = report.to_dict()

    assert data["suite"] == "morse"
    assert data["summary"] == {"total": 2, "pass": 1, "fail": 1, "skipped": 0}
    assert [c["status"] for c in data["claims"]] == ["pass", "fail"]
    assert "REPORT: suite=morse | max_n=4 | total=2 | pass=1 | fail=1 | skipped=0" == str(report)
