"""
oracle-check: closed forms against the brute-force circuit simulator
"""

import itertools
import logging
from typing import Callable, Dict, List, Tuple

from ..models import OracleCheckRow, RunConfig, SpamParams
from ..netapps import distill_map, distill_success, swap_fidelity
from ..noise import noisy_meas, noisy_prep
from ..oracle import (
    iterate_meas_transfer,
    simulate_distill_round,
    simulate_meas_purification,
    simulate_prep_purification,
    simulate_swap,
    simulate_verification_experiment,
)
from ..purify import meas_purified, prep_fidelity
from ..qops import max_distance
from ..utils import TimingContext, fan_out
from ..verify import predict_probs
from . import CommandResult

logger = logging.getLogger(__name__)

GRID_F = (0.75, 0.9, 0.95, 0.99)
GRID_Q = (0.01, 0.05, 0.1, 0.25)
GRID_EPS = (0.0, 0.01, 0.05)
MAX_DEPTH = 5
TRANSFER_DEPTHS = (10, 20, 40)
DISTILL_F = (0.55, 0.7, 0.85)
TOLERANCE = 1e-10
COLLECTIVE_TOLERANCE = 1e-12

Deviations = Dict[str, Tuple[int, float]]


def grid() -> List[SpamParams]:
    return [SpamParams(f=f, q=q, eps=eps) for f, q, eps in itertools.product(GRID_F, GRID_Q, GRID_EPS)]


def _merge(into: Deviations, name: str, deviation: float) -> None:
    points, worst = into.get(name, (0, 0.0))
    into[name] = (points + 1, max(worst, deviation))


def check_point(params: SpamParams) -> Deviations:
    """Every comparison that runs at a single (f, q, eps)"""
    found: Deviations = {}
    rho0 = noisy_prep(params.f)
    for n in range(MAX_DEPTH + 1):
        outcome = simulate_prep_purification(rho0, params.q, params.eps, n)
        closed = prep_fidelity(params, n)
        _merge(found, "prep_fidelity", max(
            abs(outcome.conditional_fidelity - closed.fidelity),
            abs(outcome.acceptance_prob - closed.success_prob),
        ))
        if params.eps == 0.0 and n > 0:
            collective = simulate_prep_purification(rho0, params.q, 0.0, n, collective=True)
            _merge(found, "collective_cnot", max_distance(collective.accepted_state, outcome.accepted_state))

        povm = simulate_meas_purification(params, n)
        closed_meas = meas_purified(params, n)
        _merge(found, "meas_purification", max(
            abs(povm.noise_fraction - closed_meas.noise),
            abs(povm.success_prob - closed_meas.success_prob),
            max(max_distance(a, b) for a, b in zip(povm.normalized, closed_meas.povm)),
        ))
        if params.eps == 0.0 and n <= 3:
            _, fidelity, _ = simulate_swap(params, n, povm)
            _merge(found, "swap_fidelity", abs(fidelity - swap_fidelity(params, n)))

    for m in TRANSFER_DEPTHS:
        transferred = iterate_meas_transfer(params, m)
        closed_meas = meas_purified(params, m)
        _merge(found, "meas_transfer", max(
            abs(transferred.noise_fraction - closed_meas.noise),
            abs(transferred.success_prob - closed_meas.success_prob) / closed_meas.success_prob,
        ))

    simulated = simulate_verification_experiment(params).as_list()
    predicted = predict_probs(params).as_list()
    _merge(found, "verification_model", max(abs(a - b) for a, b in zip(simulated, predicted)))
    return found


def check_distillation() -> Deviations:
    found: Deviations = {}
    for F, q in itertools.product(DISTILL_F, (0.0, 0.05)):
        fidelity, acceptance = simulate_distill_round(F, noisy_meas(q))
        _merge(found, "distill_round", max(
            abs(fidelity - distill_map(F, 1.0 - q, q)),
            abs(acceptance - distill_success(F, 1.0 - q, q)),
        ))
    return found


def run_oracle_check(config: RunConfig, points: Callable[[], List[SpamParams]] = grid) -> CommandResult:
    with TimingContext() as timer:
        results = fan_out(check_point, points()) + [check_distillation()]
    totals: Deviations = {}
    for found in results:
        for name, (count, worst) in found.items():
            points_so_far, worst_so_far = totals.get(name, (0, 0.0))
            totals[name] = (points_so_far + count, max(worst_so_far, worst))

    rows = []
    for name in sorted(totals):
        count, worst = totals[name]
        tolerance = COLLECTIVE_TOLERANCE if name == "collective_cnot" else TOLERANCE
        rows.append(OracleCheckRow(
            check=name, points=count, max_deviation=worst, tolerance=tolerance, passed=worst <= tolerance,
        ))
    failed = [row.check for row in rows if not row.passed]
    logger.info(f"🔬 Oracle check finished in {timer.elapsed_ms} ms: {len(rows) - len(failed)}/{len(rows)} passed")
    flagged = f"oracle deviations above tolerance: {', '.join(failed)}" if failed else None
    return CommandResult(OracleCheckRow, rows, flagged=flagged)
