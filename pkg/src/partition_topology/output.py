from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Any, Dict, List, Sequence

from .engine.errors import InvalidInputError
from .metrics import VerificationReport

CSV_FIELDS = ["claim_id", "anchor", "status", "wall_time", "error_reason", "witness"]


def ensure_dir(p: Path) -> None:
    p.mkdir(parents=True, exist_ok=True)


def write_text(path: Path, text: str) -> None:
    ensure_dir(path.parent)
    path.write_text(text, encoding="utf-8")


def write_json(path: Path, data: Any) -> None:
    ensure_dir(path.parent)
    path.write_text(json.dumps(data, ensure_ascii=False, indent=2), encoding="utf-8")


def format_table(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    """Left-aligned columns separated by two spaces."""
    cells = [[str(h) for h in header]] + [[("" if v is None else str(v)) for v in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _csv(report: VerificationReport) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for c in report.claims:
        writer.writerow(
            {
                "claim_id": c.claim_id,
                "anchor": c.anchor,
                "status": c.status,
                "wall_time": c.wall_time,
                "error_reason": c.error_reason or "",
                "witness": json.dumps(c.witness, ensure_ascii=False) if c.witness is not None else "",
            }
        )
    return buf.getvalue()


def _table(report: VerificationReport) -> str:
    rows: List[List[Any]] = [
        [c.status.upper(), c.claim_id, c.anchor, f"{c.wall_time:.2f}s", c.error_reason]
        for c in report.claims
    ]
    body = format_table(["status", "claim", "anchor", "time", "reason"], rows)
    return f"{body}\n\n{report}"


def render_report(report: VerificationReport, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report.to_dict(), ensure_ascii=False, indent=2)
    if fmt == "csv":
        return _csv(report)
    if fmt == "table":
        return _table(report)
    raise InvalidInputError(f"unknown report format '{fmt}'")


def write_report(path: Path, report: VerificationReport, fmt: str) -> None:
    write_text(path, render_report(report, fmt) + ("" if fmt == "csv" else "\n"))


def render_json(data: Dict[str, Any] | List[Any]) -> str:
    return json.dumps(data, ensure_ascii=False, indent=2)
