"""
Typed errors raised by spamlab, each carrying the CLI exit code it maps to
"""

from typing import Any, Optional


class SpamLabError(Exception):
    """Base class for every error spamlab raises on purpose"""

    code: str = "SPAMLAB_ERROR"
    exit_code: int = 1

    def __init__(self, message: str, detail: Optional[Any] = None):
        super().__init__(message)
        self.message = message
        self.detail = detail

    def __str__(self) -> str:
        return f"{self.code}: {self.message}"


class InvalidInputError(SpamLabError):
    code = "INVALID_INPUT"
    exit_code = 1


class DegenerateParamsError(InvalidInputError):
    """alpha == 1/2: the outcomes carry no information and nothing purifies"""

    code = "NO_PURIFICATION"


class ComputationFlaggedError(SpamLabError):
    code = "FLAGGED"
    exit_code = 2


class InconsistentDistributionError(ComputationFlaggedError):
    """Best verification fit leaves a residual above threshold"""

    code = "INCONSISTENT_DISTRIBUTION"


class OutputError(SpamLabError):
    code = "IO_ERROR"
    exit_code = 3
