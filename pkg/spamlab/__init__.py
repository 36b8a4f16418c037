"""
spamlab: purification of noisy state preparation and measurement
"""

from .errors import (
    ComputationFlaggedError,
    DegenerateParamsError,
    InconsistentDistributionError,
    InvalidInputError,
    OutputError,
    SpamLabError,
)
from .models import OutcomeDistribution, RunConfig, SpamParams

__version__ = "1.0.0"

__all__ = [
    "ComputationFlaggedError",
    "DegenerateParamsError",
    "InconsistentDistributionError",
    "InvalidInputError",
    "OutcomeDistribution",
    "OutputError",
    "RunConfig",
    "SpamLabError",
    "SpamParams",
]
