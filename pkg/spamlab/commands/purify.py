"""
purify-prep and purify-meas: fidelity / noise fraction against ancilla count
"""

import logging
from typing import List

from ..models import CurveRow, RunConfig, SpamParams
from ..purify import PurificationCurve, meas_curve, prep_curve
from ..utils import fan_out
from . import CommandResult

logger = logging.getLogger(__name__)


def _rows(curve: PurificationCurve, depths: List[int]) -> List[CurveRow]:
    params = curve.params
    wanted = set(depths)
    return [
        CurveRow(f=params.f, q=params.q, eps=params.eps, n=point.n, value=point.value, success_prob=point.success_prob)
        for point in curve.values
        if point.n in wanted
    ]


def _sweep(config: RunConfig, build) -> CommandResult:
    depth_max = max(config.depth)
    depths = sorted(set(config.depth))

    def one(params: SpamParams) -> List[CurveRow]:
        return _rows(build(params, depth_max), depths)

    rows = [row for block in fan_out(one, config.grid()) for row in block]
    logger.debug(f"{config.command}: {len(rows)} rows")
    return CommandResult(CurveRow, rows)


def run_prep(config: RunConfig) -> CommandResult:
    return _sweep(config, prep_curve)


def run_meas(config: RunConfig) -> CommandResult:
    return _sweep(config, meas_curve)
