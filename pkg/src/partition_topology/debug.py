from __future__ import annotations

import json
import logging
import time
from pathlib import Path
from typing import Optional

from .metrics import ClaimResult

logger = logging.getLogger(__name__)


def _safe_label(label: str) -> str:
    safe_label = "".join(c for c in label if c.isalnum() or c in "._-")[:50]
    return safe_label or "unknown"


def save_witness_artifacts(witness_dir: Optional[Path], claim: ClaimResult) -> Optional[Path]:
    """
    Dumps a failed claim (id, anchor, reason, witness) as JSON if witness_dir is set.

    Args:
        witness_dir: Directory to save artifacts to. If None, does nothing.
        claim: The finished claim; its id becomes the file label.

    Returns the written path, or None when nothing was written.
    """
    if not witness_dir:
        return None

    try:
        witness_dir.mkdir(parents=True, exist_ok=True)

        timestamp = time.strftime("%Y%m%d_%H%M%S")
        path = witness_dir / f"{timestamp}_{_safe_label(claim.claim_id)}.json"

        payload = {
            "timestamp": timestamp,
            "claim_id": claim.claim_id,
            "anchor": claim.anchor,
            "status": claim.status,
            "error_reason": claim.error_reason,
            "witness": claim.witness,
        }
        path.write_text(json.dumps(payload, ensure_ascii=False, indent=2, default=str), encoding="utf-8")
        return path

    except Exception as e:
        logger.warning("failed to save witness for %s: %s", claim.claim_id, e)
        return None
