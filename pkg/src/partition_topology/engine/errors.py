from __future__ import annotations

from enum import Enum
from typing import Any, Optional


class PartitionTopologyError(Exception):
    """Base class for toolkit errors."""


class InvalidInputError(PartitionTopologyError, ValueError):
    """Malformed input: bad composition, shape mismatch, face outside a complex."""


class CapExceededError(InvalidInputError):
    pass


class NotKnapsackError(InvalidInputError):
    pass


class NotRepresentableError(InvalidInputError):
    """kappa queried for a value that is not a sum of distinct parts."""


class TheoremViolation(PartitionTopologyError):
    """
    A verified statement did not hold.

    `witness` must stay JSON-serializable; it ends up in the report.
    """

    def __init__(self, claim: str, message: str, witness: Optional[Any] = None):
        super().__init__(f"{claim}: {message}")
        self.claim = claim
        self.witness = witness


class MatchingInconsistency(TheoremViolation):
    pass


class ErrorKind(str, Enum):
    USAGE = "usage"
    CLAIM = "claim"
    INTERNAL = "internal"


_EXIT_CODES = {
    ErrorKind.USAGE: 2,
    ErrorKind.CLAIM: 1,
    ErrorKind.INTERNAL: 1,
}


def classify_error(e: Exception) -> ErrorKind:
    """
    Classifies an exception into usage, claim or internal.
    """
    if isinstance(e, TheoremViolation):
        return ErrorKind.CLAIM
    if isinstance(e, InvalidInputError):
        return ErrorKind.USAGE

    # Plain ValueErrors come from int() parsing of CLI arguments.
    if isinstance(e, ValueError) and "invalid literal" in str(e).lower():
        return ErrorKind.USAGE

    return ErrorKind.INTERNAL


def exit_code_for(kind: ErrorKind) -> int:
    return _EXIT_CODES[kind]
