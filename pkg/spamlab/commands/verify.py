"""
verify: infer (f, q, eps) from an outcome distribution and report what it implies
"""

import logging

from ..models import RunConfig, VerifyRow
from ..verify import purification_report
from . import CommandResult

logger = logging.getLogger(__name__)


def run_verify(config: RunConfig) -> CommandResult:
    report = purification_report(config.probs, target_error=1.0 - config.target, seed=config.seed)
    params = report.inference.params
    logger.info(f"🔍 Inferred f={params.f:.6g}, q={params.q:.6g}, eps={params.eps:.6g}")
    row = VerifyRow(
        f=params.f,
        q=params.q,
        eps=params.eps,
        residual=report.inference.residual,
        multi_minimum=report.inference.multi_minimum,
        purifiable=report.purifiable,
        eps_c=report.eps_c,
        f_limit=report.f_limit,
        ancillas_for_target=report.ancillas_for_target,
    )
    return CommandResult(VerifyRow, [row])
