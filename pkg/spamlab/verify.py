"""
SPAM verification from the outcome statistics of a two-qubit experiment.

Both qubits are prepared with fidelity f, a CNOT with noise fraction eps acts
from qubit 0 onto qubit 1, and both are read out with noise fraction q. The
forward model gives p(ij) with i the outcome of the control; the inverse
solver recovers (f, q, eps) from a measured distribution.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np
from scipy.optimize import least_squares

from config.settings import settings
from .errors import InconsistentDistributionError
from .models import OutcomeDistribution, SpamParams
from .purify import ancillas_needed, critical_epsilon, fixed_point, purification_condition

logger = logging.getLogger(__name__)

_Q_MAX = 0.5 - 1e-9
_LOWER = np.array([0.5, 0.0, 0.0])
_UPPER = np.array([1.0, _Q_MAX, 1.0])


def _model(f, q, eps):
    """p00, p01, p10, p11 for scalar or array arguments"""
    g = 1.0 - f
    r = 1.0 - q
    a = 1.0 - eps
    p00 = a * (f * f * r * r + f * g * r * q + f * g * q * q + g * g * q * r) + eps / 4.0
    p01 = a * (f * f * r * q + f * g * r * r + f * g * q * r + g * g * q * q) + eps / 4.0
    p10 = a * (f * f * q * r + f * g * q * q + f * g * r * q + g * g * r * r) + eps / 4.0
    p11 = a * (f * f * q * q + f * g * q * r + f * g * r * r + g * g * r * q) + eps / 4.0
    return p00, p01, p10, p11


def predict_probs(params: SpamParams) -> OutcomeDistribution:
    p00, p01, p10, p11 = _model(params.f, params.q, params.eps)
    return OutcomeDistribution(p00=p00, p01=p01, p10=p10, p11=p11)


def correlators(dist: OutcomeDistribution) -> Tuple[float, float, float]:
    """<Z1>, <Z2>, <Z1 Z2>; the model predicts a u v, a u^2 v and a u v^2"""
    p00, p01, p10, p11 = dist.as_list()
    return p00 + p01 - p10 - p11, p00 - p01 + p10 - p11, p00 - p01 - p10 + p11


@dataclass(frozen=True)
class InferenceResult:
    params: SpamParams
    residual: float
    alternatives: List[SpamParams] = field(default_factory=list)

    @property
    def multi_minimum(self) -> bool:
        return bool(self.alternatives)


def _correlator_start(dist: OutcomeDistribution) -> Optional[np.ndarray]:
    """Direct inversion u = <Z2>/<Z1>, v = <Z1Z2>/<Z1>, a = <Z1>/(u v)"""
    z1, z2, z12 = correlators(dist)
    if z1 <= 0.0 or z2 <= 0.0 or z12 <= 0.0:
        return None
    u = z2 / z1
    v = z12 / z1
    a = z1 / (u * v)
    guess = np.array([(1.0 + u) / 2.0, (1.0 - v) / 2.0, 1.0 - a])
    return np.clip(guess, _LOWER, _UPPER)


def _grid_starts(target: np.ndarray) -> List[np.ndarray]:
    points = settings.GRID_POINTS
    f, q, eps = np.meshgrid(
        np.linspace(0.5, 1.0, points),
        np.linspace(0.0, _Q_MAX, points),
        np.linspace(0.0, 1.0, points),
        indexing="ij",
    )
    predicted = np.stack(_model(f, q, eps), axis=-1)
    cost = np.sum((predicted - target) ** 2, axis=-1).ravel()
    best = np.argsort(cost, kind="stable")[: settings.REFINE_STARTS]
    grid = np.stack([f.ravel(), q.ravel(), eps.ravel()], axis=-1)
    return [grid[i] for i in best]


def _refine(start: np.ndarray, target: np.ndarray) -> Tuple[np.ndarray, float]:
    def residuals(x: np.ndarray) -> np.ndarray:
        return np.array(_model(*x)) - target

    fit = least_squares(
        residuals,
        start,
        bounds=(_LOWER, _UPPER),
        method="trf",
        xtol=1e-15,
        ftol=1e-15,
        gtol=1e-15,
    )
    x = np.clip(fit.x, _LOWER, _UPPER)
    return x, float(np.sum(residuals(x) ** 2))


def infer_params(dist: OutcomeDistribution, seed: int = 0) -> InferenceResult:
    """Least-squares (f, q, eps) for a measured distribution

    Coarse grid search over the constrained box, then bounded trust-region
    refinement from the best grid points, from seeded jitter around the best
    one and from the direct correlator inversion. Raises
    InconsistentDistributionError when no fit reaches the residual threshold.
    """
    target = np.array(dist.as_list())
    starts = _grid_starts(target)
    rng = np.random.default_rng(seed)
    step = 1.0 / (settings.GRID_POINTS - 1)
    scale = step * (_UPPER - _LOWER)
    for _ in range(settings.REFINE_STARTS):
        starts.append(np.clip(starts[0] + rng.normal(0.0, 1.0, 3) * scale, _LOWER, _UPPER))
    direct = _correlator_start(dist)
    if direct is not None:
        starts.append(direct)

    fits = sorted((_refine(start, target) for start in starts), key=lambda fit: fit[1])
    best_x, best_residual = fits[0]
    if best_residual > settings.RESIDUAL_THRESHOLD:
        raise InconsistentDistributionError(
            f"no (f, q, eps) reproduces the distribution (residual {best_residual:.3e})",
            detail={"f": best_x[0], "q": best_x[1], "eps": best_x[2], "residual": best_residual},
        )

    distinct = [best_x]
    alternatives = []
    for x, residual in fits[1:]:
        if residual > best_residual + settings.ALTERNATIVE_RESIDUAL_TOL:
            continue
        if all(np.max(np.abs(x - other)) > settings.DISTINCT_FIT_TOL for other in distinct):
            distinct.append(x)
            alternatives.append(SpamParams(f=float(x[0]), q=float(x[1]), eps=float(x[2])))

    params = SpamParams(f=float(best_x[0]), q=float(best_x[1]), eps=float(best_x[2]))
    if alternatives:
        logger.warning(f"⚠️ {len(alternatives)} distinct fits as good as {params}; the inversion is not unique here")
    logger.debug(f"inferred {params} with residual {best_residual:.3e}")
    return InferenceResult(params, best_residual, alternatives)


@dataclass(frozen=True)
class PurificationReport:
    """What the inferred noise implies for purification"""

    inference: InferenceResult
    purifiable: bool
    eps_c: float
    f_limit: float
    ancillas_for_target: Optional[int]


def purification_report(dist: OutcomeDistribution, target_error: float = 1e-3, seed: int = 0) -> PurificationReport:
    inference = infer_params(dist, seed=seed)
    params = inference.params
    ancillas = ancillas_needed(params, target_error) if params.bias > 0.0 else None
    return PurificationReport(
        inference=inference,
        purifiable=purification_condition(params),
        eps_c=critical_epsilon(params.f),
        f_limit=fixed_point(params).f_inf,
        ancillas_for_target=ancillas,
    )
