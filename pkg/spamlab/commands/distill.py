"""
distill: expected copies of a shared state needed to reach the target fidelity
"""

import logging

from ..models import DistillRow, RunConfig
from ..netapps import copies_needed
from . import CommandResult

logger = logging.getLogger(__name__)


def run_distill(config: RunConfig) -> CommandResult:
    rows = []
    undistillable = 0
    for params in config.grid():
        for n in config.depth:
            for F0 in config.F0:
                trace = copies_needed(params, n, F0, config.target)
                if trace.undistillable:
                    undistillable += 1
                    logger.warning(f"⚠️ F0={F0} is undistillable with n={n} (L={trace.threshold:.6g})")
                rows.append(DistillRow(
                    f=params.f, q=params.q, eps=params.eps, n=n, F0=F0,
                    threshold=trace.threshold,
                    undistillable=trace.undistillable,
                    rounds=len(trace.rounds),
                    first_success_prob=trace.first_success_prob,
                    copies=None if trace.undistillable else trace.N_c,
                ))
    flagged = f"{undistillable} undistillable cells" if undistillable else None
    return CommandResult(DistillRow, rows, flagged=flagged)
