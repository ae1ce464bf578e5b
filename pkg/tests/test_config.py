import pytest

from partition_topology.config import CAPS, SUITES, cap_for, config_from_env, ensure_within_cap
from partition_topology.engine.errors import CapExceededError, InvalidInputError


def test_config_from_env_defaults(monkeypatch):
    for var in ("PARTITION_TOPOLOGY_MAX_N", "PARTITION_TOPOLOGY_JOBS", "PARTITION_TOPOLOGY_RNG_SEED", "PARTITION_TOPOLOGY_WITNESS_DIR",
                "PARTITION_TOPOLOGY_SUITES", "PARTITION_TOPOLOGY_SPHERE_SAMPLES"):
        monkeypatch.delenv(var, raising=False)

    cfg = config_from_env()

    assert cfg.max_n == 4
    assert cfg.jobs == 1
    assert cfg.rng_seed == 0
    assert cfg.witness_dir is None
    assert cfg.suites == list(SUITES)
    assert cfg.sphere_samples == 20


def test_invalid_env_values_fall_back(monkeypatch):
    monkeypatch.setenv("PARTITION_TOPOLOGY_MAX_N", "many")
    monkeypatch.setenv("PARTITION_TOPOLOGY_JOBS", "-4")

    cfg = config_from_env()

    assert cfg.max_n == 4
    assert cfg.jobs == 1


def test_caps_from_env(monkeypatch):
    monkeypatch.setenv("PARTITION_TOPOLOGY_CAP", "9")
    monkeypatch.setenv("PARTITION_TOPOLOGY_CAP_LAMBDA", "5")

    caps = config_from_env().caps

    assert caps["lambda"] == 5
    assert caps["delta"] == 9
    assert caps["pointed_lattice"] == 9


def test_cap_for():
    assert cap_for("delta") == CAPS["delta"]
    assert cap_for("delta", 3) == 3
    with pytest.raises(InvalidInputError):
        cap_for("nope")


def test_ensure_within_cap():
    ensure_within_cap(3, "lambda", 3)
    with pytest.raises(CapExceededError, match="exceeds the lambda cap"):
        ensure_within_cap(4, "lambda", 3)


def test_suites_and_sphere_samples_from_env(monkeypatch):
    monkeypatch.setenv("PARTITION_TOPOLOGY_SUITES", "morse, specht")
    monkeypatch.setenv("PARTITION_TOPOLOGY_SPHERE_SAMPLES", "5")

    cfg = config_from_env()

    assert cfg.suites == ["morse", "specht"]
    assert cfg.sphere_samples == 5


def test_unknown_suite_in_env_is_rejected(monkeypatch):
    monkeypatch.setenv("PARTITION_TOPOLOGY_SUITES", "morse,nope")
    with pytest.raises(InvalidInputError, match="nope"):
        config_from_env()
