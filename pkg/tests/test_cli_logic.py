from pathlib import Path

import pytest

from partition_topology.cli import _config, build_parser


def parse(*argv):
    return build_parser().parse_args(list(argv))


def test_parser_reads_compositions():
    args = parse("beta", "--composition", "1, 2,1")
    assert args.composition == [1, 2, 1]


@pytest.mark.parametrize(
    "argv",
    [
        ["beta"],
        ["beta", "--composition", "a,b"],
        ["verify", "--suite", "nope"],
        ["homology", "--composition", "1,2"],
        ["matching", "--lambda", "2,1"],
    ],
)
def test_parser_errors_exit(argv, capsys):
    with pytest.raises(SystemExit) as e:
        parse(*argv)
    assert e.value.code == 2


def test_config_flags_override_env(monkeypatch, tmp_path):
    monkeypatch.setenv("PARTITION_TOPOLOGY_MAX_N", "6")
    monkeypatch.setenv("PARTITION_TOPOLOGY_JOBS", "3")

    cfg = _config(parse("--jobs", "0", "--rng-seed", "7", "--witness-dir", str(tmp_path), "verify", "--max-n", "4", "--format", "csv"))

    assert cfg.max_n == 4
    assert cfg.jobs == 1
    assert cfg.rng_seed == 7
    assert cfg.witness_dir == Path(tmp_path)
    assert cfg.output_format == "csv"
    assert cfg.allow_non_knapsack is False


def test_config_keeps_env_defaults(monkeypatch):
    monkeypatch.setenv("PARTITION_TOPOLOGY_MAX_N", "6")
    monkeypatch.setenv("PARTITION_TOPOLOGY_JOBS", "3")

    cfg = _config(parse("verify"))

    assert cfg.max_n == 6
    assert cfg.jobs == 3
    assert cfg.output_format == "table"


def test_homology_format_does_not_touch_report_format():
    cfg = _config(parse("homology", "--complex", "delta", "--composition", "1,2", "--format", "json"))
    assert cfg.output_format == "table"


def test_sphere_samples_flag(monkeypatch):
    monkeypatch.setenv("PARTITION_TOPOLOGY_SPHERE_SAMPLES", "7")
    assert _config(parse("verify")).sphere_samples == 7
    assert _config(parse("--sphere-samples", "3", "verify")).sphere_samples == 3
    assert _config(parse("--sphere-samples", "-1", "verify")).sphere_samples == 0
