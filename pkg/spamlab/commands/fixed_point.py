"""
fixed-point and condition: limits under a noisy CNOT and whether purification starts at all
"""

import logging

from ..models import ConditionRow, FixedPointRow, RunConfig
from ..purify import critical_epsilon, fixed_point, prep_fidelity, purification_condition
from . import CommandResult

logger = logging.getLogger(__name__)


def run_fixed_point(config: RunConfig) -> CommandResult:
    rows = []
    for params in config.grid():
        limit = fixed_point(params)
        rows.append(FixedPointRow(f=params.f, q=params.q, eps=params.eps, **limit._asdict()))
    return CommandResult(FixedPointRow, rows)


def run_condition(config: RunConfig) -> CommandResult:
    rows = []
    for params in config.grid():
        purifiable = purification_condition(params)
        eps_c = critical_epsilon(params.f)
        f_one = prep_fidelity(params, 1).fidelity if params.bias > 0.0 else params.f
        verdict = "purifiable" if purifiable else f"not purifiable (eps_c = {eps_c:.4f})"
        if not purifiable:
            logger.warning(f"⚠️ f={params.f}, q={params.q}, eps={params.eps}: {verdict}")
        rows.append(ConditionRow(
            f=params.f, q=params.q, eps=params.eps,
            f_one=f_one, purifiable=purifiable, eps_c=eps_c, verdict=verdict,
        ))
    return CommandResult(ConditionRow, rows)
