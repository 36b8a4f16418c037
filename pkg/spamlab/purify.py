"""
Closed forms and recurrences for purified preparation and measurement.

Both protocols reduce to one diagonal map per ancilla,

    x0 -> (1 - eps) alpha x0 + eps/4 (x0 + x1)
    x1 -> (1 - eps) (1 - alpha) x1 + eps/4 (x0 + x1)

started from (f, 1 - f) for a prepared state and from (1 - q, q) for a
measurement effect. With a noiseless CNOT it solves to x0 alpha^n and
x1 (1 - alpha)^n.
"""

import logging
import math
from dataclasses import dataclass
from typing import Literal, NamedTuple, Optional, Tuple

from config.settings import settings
from .errors import DegenerateParamsError, InvalidInputError
from .models import SpamParams
from .noise import PovmPair, noisy_meas

logger = logging.getLogger(__name__)

CurveKind = Literal["prep", "meas"]


class PrepPurification(NamedTuple):
    fidelity: float
    success_prob: float


class MeasPurification(NamedTuple):
    noise: float
    success_prob: float
    povm: PovmPair


class FixedPoint(NamedTuple):
    D: float
    d: float
    f_inf: float
    q_inf: float


class CurvePoint(NamedTuple):
    n: int
    value: float
    success_prob: float


@dataclass(frozen=True)
class PurificationCurve:
    """Fidelity (prep) or noise fraction (meas) against ancilla count"""

    params: SpamParams
    kind: CurveKind
    values: Tuple[CurvePoint, ...]

    def __post_init__(self):
        tol = settings.MATRIX_TOL
        previous = 1.0 + tol
        for point in self.values:
            if not 0.0 <= point.success_prob <= 1.0 + tol:
                raise InvalidInputError(f"success probability {point.success_prob!r} at n={point.n} outside (0, 1]")
            if point.success_prob > previous + tol:
                raise InvalidInputError(f"success probability increases at n={point.n}")
            previous = point.success_prob


def _require_bias(params: SpamParams) -> None:
    if params.bias == 0.0:
        raise DegenerateParamsError(
            f"alpha = 1/2 for f={params.f}, q={params.q}: outcomes carry no information, nothing purifies"
        )


def _require_depth(n: int) -> None:
    if n < 0:
        raise InvalidInputError(f"ancilla count {n} must be >= 0")


def _iterate(params: SpamParams, x0: float, x1: float, steps: int) -> Tuple[float, float, float]:
    """Run the noisy-gate map, renormalizing each step; returns (x0, x1, log total weight)"""
    alpha = params.alpha
    a = (1.0 - params.eps) * alpha
    b = (1.0 - params.eps) * (1.0 - alpha)
    c = params.eps / 4.0
    total = x0 + x1
    log_weight = math.log(total)
    x0, x1 = x0 / total, x1 / total
    for _ in range(steps):
        y0 = a * x0 + c
        y1 = b * x1 + c
        t = y0 + y1
        log_weight += math.log(t)
        x0, x1 = y0 / t, y1 / t
    return x0, x1, log_weight


def diag_recurrence(params: SpamParams, x0: float, x1: float, n: int) -> Tuple[float, float]:
    """Unnormalized diagonal pair after n ancillas"""
    _require_depth(n)
    if params.eps == 0.0:
        alpha = params.alpha
        return x0 * alpha ** n, x1 * (1.0 - alpha) ** n
    y0, y1, log_weight = _iterate(params, x0, x1, n)
    weight = math.exp(log_weight)
    return y0 * weight, y1 * weight


def prep_recurrence(params: SpamParams, n: int) -> Tuple[float, float]:
    """(R00, R11) of the accepted, unnormalized system state"""
    return diag_recurrence(params, params.f, 1.0 - params.f, n)


def meas_recurrence(params: SpamParams, m: int) -> Tuple[float, float]:
    """(<k|M~_k^(m)|k>, <k'|M~_k^(m)|k'>) of the unnormalized purified effect"""
    return diag_recurrence(params, 1.0 - params.q, params.q, m)


def _suppressed_ratio(params: SpamParams, start: float, n: int) -> float:
    """start * ((1 - alpha)/alpha)^n evaluated in the log domain"""
    if start == 0.0 or params.alpha == 1.0:
        return 0.0 if n > 0 or start == 0.0 else start
    log_ratio = n * (math.log1p(-params.alpha) - math.log(params.alpha)) + math.log(start)
    return math.exp(log_ratio)


def prep_fidelity(params: SpamParams, n: int) -> PrepPurification:
    """Fidelity f^(n) and acceptance probability with n ancillas"""
    _require_depth(n)
    _require_bias(params)
    if n == 0:
        return PrepPurification(params.f, 1.0)
    f = params.f
    if params.eps == 0.0:
        ratio = _suppressed_ratio(params, (1.0 - f) / f, n)
        alpha = params.alpha
        success = f * alpha ** n + (1.0 - f) * (1.0 - alpha) ** n
        return PrepPurification(1.0 / (1.0 + ratio), success)
    x0, x1, log_weight = _iterate(params, f, 1.0 - f, n)
    return PrepPurification(x0 / (x0 + x1), math.exp(log_weight))


def meas_purified(params: SpamParams, m: int) -> MeasPurification:
    """Noise fraction q^(m), success probability p_s^(m) and the purified POVM"""
    _require_depth(m)
    _require_bias(params)
    q = params.q
    if m == 0:
        return MeasPurification(q, 1.0, noisy_meas(q))
    if params.eps == 0.0:
        ratio = 0.0 if q == 0.0 else _suppressed_ratio(params, q / (1.0 - q), m)
        alpha = params.alpha
        success = alpha ** m * (1.0 - q) + (1.0 - alpha) ** m * q
        noise = ratio / (1.0 + ratio)
    else:
        x0, x1, log_weight = _iterate(params, 1.0 - q, q, m)
        success = math.exp(log_weight)
        noise = x1 / (x0 + x1)
    return MeasPurification(noise, success, noisy_meas(noise))


def fixed_point(params: SpamParams) -> FixedPoint:
    """Limits of f^(n) and q^(m) under a noisy CNOT"""
    if params.eps == 0.0:
        return FixedPoint(math.inf, 0.0, 1.0, 0.0)
    D = params.gate_ratio
    root = math.hypot(D, 1.0)
    # sqrt(D^2 + 1) - D without cancellation
    d = 1.0 / (root + D)
    return FixedPoint(D, d, 1.0 / (1.0 + d), 1.0 / (1.0 + D + root))


def purification_condition(params: SpamParams) -> bool:
    """f < f_eps^(1): one round strictly improves the preparation"""
    if params.bias == 0.0:
        return False
    return params.f < prep_fidelity(params, 1).fidelity


def critical_epsilon(f: float) -> float:
    """Largest CNOT noise fraction that still purifies balanced errors 1 - f = q"""
    if not 0.5 <= f <= 1.0:
        raise InvalidInputError(f"fidelity {f!r} outside [1/2, 1]")
    k = 8.0 * f ** 3 - 12.0 * f ** 2 + 4.0 * f
    eps_c = k / (k - 1.0)
    return eps_c if eps_c != 0.0 else 0.0


def critical_epsilon_series(f: float) -> float:
    """Small-error expansion 4(1 - f) - 28(1 - f)^2"""
    e = 1.0 - f
    return 4.0 * e - 28.0 * e * e


def prep_curve(params: SpamParams, n_max: int) -> PurificationCurve:
    points = tuple(CurvePoint(n, *prep_fidelity(params, n)) for n in range(n_max + 1))
    return PurificationCurve(params, "prep", points)


def meas_curve(params: SpamParams, m_max: int) -> PurificationCurve:
    points = []
    for m in range(m_max + 1):
        result = meas_purified(params, m)
        points.append(CurvePoint(m, result.noise, result.success_prob))
    return PurificationCurve(params, "meas", tuple(points))


def ancillas_needed(
    params: SpamParams,
    target_error: float,
    kind: CurveKind = "prep",
    n_max: int = 64,
) -> Optional[int]:
    """Smallest ancilla count whose residual error drops below target_error"""
    if target_error <= 0.0:
        raise InvalidInputError("target error must be positive")
    _require_bias(params)
    limit = fixed_point(params).q_inf
    if limit >= target_error:
        logger.debug(f"target {target_error} unreachable: limit error {limit:.6g} for {params}")
        return None
    for n in range(n_max + 1):
        if kind == "prep":
            error = 1.0 - prep_fidelity(params, n).fidelity
        else:
            error = meas_purified(params, n).noise
        if error < target_error:
            return n
    return None
