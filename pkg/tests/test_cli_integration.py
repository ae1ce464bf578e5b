import json

import pytest

from partition_topology import cli
from partition_topology.cli import main


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for var in ("PARTITION_TOPOLOGY_MAX_N", "PARTITION_TOPOLOGY_JOBS", "PARTITION_TOPOLOGY_WITNESS_DIR", "PARTITION_TOPOLOGY_CAP",
                "PARTITION_TOPOLOGY_SUITES", "PARTITION_TOPOLOGY_SPHERE_SAMPLES"):
        monkeypatch.delenv(var, raising=False)


def test_beta(capsys):
    assert main(["beta", "--composition", "1,2,1"]) == 0
    assert capsys.readouterr().out == "5\n"


def test_beta_list(capsys):
    assert main(["beta", "--composition", "1,2,1", "--list"]) == 0
    lines = capsys.readouterr().out.split()
    assert lines[0] == "5"
    assert sorted(lines[1:]) == ["2143", "3142", "3241", "4132", "4231"]


def test_homology_of_delta(capsys):
    assert main(["homology", "--complex", "delta", "--composition", "1,2,1"]) == 0
    assert capsys.readouterr().out.strip() == "Delta_(1,2,1): betti=[0, 5]"


def test_homology_of_lambda_as_json(capsys):
    assert main(["homology", "--complex", "lambda", "--lambda", "2,1", "--m", "1", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["complex"] == "Lambda_{2,1,_1}"
    assert data["betti"] == [0, 11]


def test_homology_of_order_complex(capsys):
    assert main(["homology", "--complex", "order-complex", "--composition", "1,1,1"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("Delta(Pi*_(1,1,1) - 1^)")
    assert "betti=[0, 1]" in out


def test_matching_table(capsys):
    assert main(["matching", "--lambda", "2,1", "--m", "1"]) == 0
    out = capsys.readouterr().out
    assert out.rstrip().endswith("total critical cells: 11")
    assert "2-14-3" in out


def test_matching_all_as_json(capsys):
    assert main(["matching", "--lambda", "2,1", "--m", "1", "--all", "--format", "json"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert rows[0]["face"] == "1234"
    assert sum(1 for r in rows if r["status"] == "critical") == 11


def test_verify_json(capsys):
    assert main(["verify", "--suite", "morse", "--max-n", "3", "--format", "json"]) == 0
    captured = capsys.readouterr()
    report = json.loads(captured.out)
    assert report["suite"] == "morse"
    assert report["summary"]["fail"] == 0
    assert "REPORT:" in captured.err


def test_output_file(tmp_path, capsys):
    path = tmp_path / "out" / "beta.txt"
    assert main(["--output", str(path), "beta", "--composition", "2,1"]) == 0
    assert path.read_text(encoding="utf-8") == "2\n"
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "Written to" in captured.err


def test_non_knapsack_is_a_usage_error(capsys):
    assert main(["homology", "--complex", "lambda", "--lambda", "2,1,1", "--m", "1"]) == 2
    err = capsys.readouterr().err
    assert "Error:" in err
    assert "[usage]" in err


def test_allow_non_knapsack_flag(capsys):
    code = main(["--allow-non-knapsack", "homology", "--complex", "lambda", "--lambda", "2,1,1", "--m", "0"])
    assert code == 0
    assert capsys.readouterr().out.startswith("Lambda_")


def test_missing_composition(capsys):
    assert main(["homology", "--complex", "delta"]) == 2
    assert "--composition is required" in capsys.readouterr().err


def test_cap_exceeded(capsys):
    assert main(["homology", "--complex", "order-complex", "--composition", "1,1,1,1,1,1"]) == 2
    assert "cap" in capsys.readouterr().err


def test_verify_rejects_zero_max_n(capsys):
    assert main(["verify", "--suite", "morse", "--max-n", "0"]) == 2


def test_keyboard_interrupt(monkeypatch, capsys):
    def interrupted(args, cfg):
        raise KeyboardInterrupt

    monkeypatch.setattr(cli, "cmd_beta", interrupted)
    assert main(["beta", "--composition", "1"]) == 1
    assert "Interrupted by user." in capsys.readouterr().err


def test_verify_report_goes_to_output(tmp_path, capsys):
    path = tmp_path / "report.json"
    assert main(["--output", str(path), "verify", "--suite", "morse", "--max-n", "2", "--format", "json"]) == 0
    report = json.loads(path.read_text(encoding="utf-8"))
    assert report["suite"] == "morse"
    assert report["summary"]["fail"] == 0
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "Written to" in captured.err


def test_homology_json_goes_to_output(tmp_path, capsys):
    path = tmp_path / "delta.json"
    assert main(["--output", str(path), "homology", "--complex", "delta", "--composition", "1,2,1", "--format", "json"]) == 0
    data = json.loads(path.read_text(encoding="utf-8"))
    assert data["complex"] == "Delta_(1,2,1)"
    assert data["betti"] == [0, 5]
    assert capsys.readouterr().out == ""


def test_suites_env_limits_verify_all(monkeypatch, capsys):
    monkeypatch.setenv("PARTITION_TOPOLOGY_SUITES", "morse")
    assert main(["verify", "--max-n", "2", "--format", "json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["claims"]
    assert all("matching" in c["claim_id"] or "critical" in c["claim_id"] for c in report["claims"])
