from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional

from .engine.errors import CapExceededError, InvalidInputError


def _get_int(env_var: str, default: int) -> int:
    """Read int from env, fallback to default on missing/invalid."""
    try:
        val = os.getenv(env_var)
        if val:
            return int(val)
    except ValueError:
        pass
    return default


# Largest ground-set size each construction accepts.
# PARTITION_TOPOLOGY_CAP moves every cap at once; the per-key variables win over it.
_DEFAULT_CAPS: Dict[str, int] = {
    "pointed_lattice": 7,  # Bell(8) = 4140 elements
    "delta": 8,  # 8! facets for c = (1,...,1)
    "lambda": 7,
    "beta": 10,  # brute force over S_n
    "order_complex": 5,  # proper part of Pi*_5 has 201 elements
}


def _load_caps() -> Dict[str, int]:
    caps: Dict[str, int] = {}
    for key, default in _DEFAULT_CAPS.items():
        base = _get_int("PARTITION_TOPOLOGY_CAP", default)
        caps[key] = _get_int(f"PARTITION_TOPOLOGY_CAP_{key.upper()}", base)
    return caps


CAPS: Dict[str, int] = _load_caps()


def cap_for(key: str, override: Optional[int] = None) -> int:
    if override is not None:
        return int(override)
    try:
        return CAPS[key]
    except KeyError:
        raise InvalidInputError(f"unknown cap '{key}'") from None


def ensure_within_cap(n: int, key: str, cap: Optional[int] = None) -> None:
    limit = cap_for(key, cap)
    if n > limit:
        raise CapExceededError(
            f"n={n} exceeds the {key} cap ({limit}); raise it with PARTITION_TOPOLOGY_CAP"
        )


SUITES: List[str] = ["mobius", "homology", "morse", "cycles", "specht"]
FORMATS: List[str] = ["json", "csv", "table"]


@dataclass
class ToolkitConfig:
    """
    Settings of one verification run.
    Env supplies defaults (see config_from_env), CLI flags override them.
    """

    max_n: int = 4
    suites: List[str] = field(default_factory=lambda: list(SUITES))
    output_format: str = "table"
    jobs: int = 1
    rng_seed: int = 0
    sphere_samples: int = 20  # random (alpha, c) per n for the Sigma_alpha spheres
    witness_dir: Optional[Path] = None
    allow_non_knapsack: bool = False
    caps: Dict[str, int] = field(default_factory=lambda: dict(CAPS))

    def cap(self, key: str) -> int:
        return cap_for(key, self.caps.get(key))


def _get_suites(env_var: str) -> List[str]:
    """Comma-separated suite names; unknown names are an error, missing means every suite."""
    val = os.getenv(env_var)
    if not val:
        return list(SUITES)
    names = [s.strip() for s in val.split(",") if s.strip()]
    unknown = [s for s in names if s not in SUITES]
    if unknown:
        raise InvalidInputError(f"{env_var}: unknown suites {unknown}")
    return names or list(SUITES)


def config_from_env() -> ToolkitConfig:
    witness_dir_str = os.environ.get("PARTITION_TOPOLOGY_WITNESS_DIR")
    return ToolkitConfig(
        max_n=_get_int("PARTITION_TOPOLOGY_MAX_N", 4),
        jobs=max(1, _get_int("PARTITION_TOPOLOGY_JOBS", 1)),
        suites=_get_suites("PARTITION_TOPOLOGY_SUITES"),
        rng_seed=_get_int("PARTITION_TOPOLOGY_RNG_SEED", 0),
        sphere_samples=max(0, _get_int("PARTITION_TOPOLOGY_SPHERE_SAMPLES", 20)),
        witness_dir=Path(witness_dir_str) if witness_dir_str else None,
        caps=_load_caps(),
    )
