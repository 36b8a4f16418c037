"""
Applications of purified measurements: entanglement distillation and swapping.

Distillation follows the bilateral-CNOT recurrence on Werner states, with
the measurement on the second pair replaced by a purified POVM whose
diagonal is (r0, r1). A round keeps the first pair when both sides agree.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Tuple

from config.settings import settings
from .errors import ComputationFlaggedError, DegenerateParamsError, InvalidInputError
from .models import SpamParams
from .purify import fixed_point, meas_purified, meas_recurrence

logger = logging.getLogger(__name__)


class DistillRound(NamedTuple):
    j: int
    fidelity: float
    success_prob: float


class Threshold(NamedTuple):
    L: float
    L_inf: float


@dataclass(frozen=True)
class DistillationTrace:
    """Rounds of recurrence distillation from F0 until the target is exceeded"""

    params: SpamParams
    n_ancillas: int
    F0: float
    target: float
    threshold: float
    rounds: Tuple[DistillRound, ...] = field(default_factory=tuple)
    final_fidelity: Optional[float] = None

    def __post_init__(self):
        fidelities = [r.fidelity for r in self.rounds]
        if self.final_fidelity is not None:
            fidelities.append(self.final_fidelity)
        if any(b <= a for a, b in zip(fidelities, fidelities[1:])):
            raise ComputationFlaggedError("distillation trace is not strictly increasing", detail=fidelities)

    @property
    def undistillable(self) -> bool:
        return self.F0 <= self.threshold

    @property
    def N_c(self) -> float:
        """Expected copies: a factor 2/p_succ per round"""
        if self.undistillable:
            return math.inf
        copies = 1.0
        for r in self.rounds:
            copies *= 2.0 / r.success_prob
        return copies

    @property
    def first_success_prob(self) -> Optional[float]:
        return self.rounds[0].success_prob if self.rounds else None


def povm_diag_recurrence(params: SpamParams, n: int) -> Tuple[float, float]:
    """(r0, r1) = (<k|M~_k^(n)|k>, <k'|M~_k^(n)|k'>)"""
    return meas_recurrence(params, n)


def _check_round(F: float, r0: float, r1: float) -> None:
    if not 0.25 <= F <= 1.0:
        raise InvalidInputError(f"Werner fidelity {F!r} outside [1/4, 1]")
    if r1 < 0.0:
        raise InvalidInputError(f"r1 = {r1!r} is negative")
    if r0 <= r1:
        raise DegenerateParamsError(f"r0 = {r0!r} <= r1 = {r1!r}: the measurement carries no information")


def _parts(F: float, r0: float, r1: float) -> Tuple[float, float, float, float]:
    b = (1.0 - F) / 3.0
    r_even = r0 * r0 + r1 * r1
    r_odd = 2.0 * r0 * r1
    return b, r_even, r_odd, (F * b + b * b) * r_odd / r_even


def distill_map(F: float, r0: float, r1: float) -> float:
    """Fidelity after one round; the ideal recurrence map when r1 = 0"""
    _check_round(F, r0, r1)
    b, _, _, g = _parts(F, r0, r1)
    return (F * F + b * b + g) / (F * F + 2.0 * F * b + 5.0 * b * b + 4.0 * g)


def distill_success(F: float, r0: float, r1: float) -> float:
    """Probability that both sides report the same outcome"""
    _check_round(F, r0, r1)
    b, r_even, r_odd, _ = _parts(F, r0, r1)
    return (F * F + 2.0 * F * b + 5.0 * b * b) * r_even + (4.0 * F * b + 4.0 * b * b) * r_odd


def _threshold_from(r0: float, r1: float) -> float:
    return 0.5 * ((r0 + r1) / (r0 - r1)) ** 2


def distill_gain(F: float, r0: float, r1: float) -> float:
    """F' - F = 8 (r0 - r1)^2 (F - 1/4)(F - L)(1 - F) / (9 p_succ)"""
    _check_round(F, r0, r1)
    L = _threshold_from(r0, r1)
    return 8.0 * (r0 - r1) ** 2 * (F - 0.25) * (F - L) * (1.0 - F) / (9.0 * distill_success(F, r0, r1))


def distill_threshold(params: SpamParams, n: int) -> Threshold:
    """Lowest distillable fidelity with n ancillas, and its limit n -> infinity"""
    r0, r1 = povm_diag_recurrence(params, n)
    if r0 <= r1:
        raise DegenerateParamsError(f"no distillation threshold for {params} at n={n}")
    if params.eps == 0.0:
        L_inf = 0.5
    else:
        d = fixed_point(params).d
        L_inf = 0.5 * ((1.0 + d) / (1.0 - d)) ** 2
    return Threshold(_threshold_from(r0, r1), L_inf)


def copies_needed(
    params: SpamParams,
    n: int,
    F0: float,
    F_target: float = settings.DEFAULT_TARGET_FIDELITY,
) -> DistillationTrace:
    """Iterate rounds from F0 until the fidelity strictly exceeds F_target"""
    if not 0.0 < F_target < 1.0:
        raise InvalidInputError(f"target fidelity {F_target!r} outside (0, 1)")
    if not 0.0 <= F0 <= 1.0:
        raise InvalidInputError(f"initial fidelity {F0!r} outside [0, 1]")
    r0, r1 = povm_diag_recurrence(params, n)
    L = distill_threshold(params, n).L
    trace = dict(params=params, n_ancillas=n, F0=F0, target=F_target, threshold=L)
    if F0 <= L:
        logger.info(f"F0={F0} is undistillable with n={n} (L={L:.6g})")
        return DistillationTrace(**trace)

    rounds = []
    F = F0
    while F <= F_target:
        if len(rounds) >= settings.MAX_DISTILL_ROUNDS:
            raise ComputationFlaggedError(
                f"target {F_target} not reached after {settings.MAX_DISTILL_ROUNDS} rounds (F={F:.12g})"
            )
        rounds.append(DistillRound(len(rounds) + 1, F, distill_success(F, r0, r1)))
        F = distill_map(F, r0, r1)
    return DistillationTrace(**trace, rounds=tuple(rounds), final_fidelity=F)


def optimal_ancillas(
    params: SpamParams,
    F0: float,
    n_max: int = 4,
    F_target: float = settings.DEFAULT_TARGET_FIDELITY,
) -> Optional[DistillationTrace]:
    """Trace with the fewest expected copies over n = 0..n_max"""
    best = None
    for n in range(n_max + 1):
        trace = copies_needed(params, n, F0, F_target)
        if trace.undistillable:
            continue
        if best is None or trace.N_c < best.N_c:
            best = trace
    return best


def swap_fidelity(params: SpamParams, m: int) -> float:
    """[1 + r1/r0]^-2 for a Bell measurement with m-ancilla purified readout"""
    if m < 0:
        raise InvalidInputError(f"ancilla count {m} must be >= 0")
    if m == 0:
        return (1.0 - params.q) ** 2
    # r0/(r0 + r1) is 1 - q^(m)
    return (1.0 - meas_purified(params, m).noise) ** 2
