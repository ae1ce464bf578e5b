from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional

STATUSES = ("pass", "fail", "skipped", "pending")


@dataclass
class ClaimResult:
    claim_id: str
    anchor: str
    start_ts: float
    end_ts: float = 0.0
    wall_time: float = 0.0
    status: str = "pending"  # pass, fail, skipped
    witness: Optional[Any] = None
    error_reason: Optional[str] = None

    def finish(self, status: str, witness: Optional[Any] = None, error_reason: Optional[str] = None) -> None:
        if status not in STATUSES:
            raise ValueError(f"unknown claim status '{status}'")
        self.end_ts = time.time()
        self.wall_time = round(self.end_ts - self.start_ts, 2)
        self.status = status
        self.witness = witness
        self.error_reason = error_reason

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False)

    def __str__(self) -> str:
        err_str = f" | reason={self.error_reason}" if self.error_reason else ""
        return f"CLAIM: id={self.claim_id} | status={self.status} | duration={self.wall_time}s{err_str}"


@dataclass
class VerificationReport:
    suite: str
    max_n: int
    claims: List[ClaimResult] = field(default_factory=list)

    def count(self, status: str) -> int:
        return sum(1 for c in self.claims if c.status == status)

    @property
    def passed(self) -> int:
        return self.count("pass")

    @property
    def failed(self) -> int:
        return self.count("fail")

    @property
    def skipped(self) -> int:
        return self.count("skipped")

    @property
    def exit_code(self) -> int:
        return 1 if self.failed else 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "suite": self.suite,
            "max_n": self.max_n,
            "summary": {
                "total": len(self.claims),
                "pass": self.passed,
                "fail": self.failed,
                "skipped": self.skipped,
            },
            "claims": [c.to_dict() for c in self.claims],
        }

    def __str__(self) -> str:
        return (
            f"REPORT: suite={self.suite} | max_n={self.max_n} | total={len(self.claims)} | "
            f"pass={self.passed} | fail={self.failed} | skipped={self.skipped}"
        )
