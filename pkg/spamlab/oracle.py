"""
Brute-force circuit simulator.

Builds every purification circuit out of qops/noise primitives, runs it as an
explicit tensor contraction and post-selects on measurement outcomes. Nothing
here calls the closed forms in purify or netapps; the two code paths are
compared in tests and by the oracle-check command.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from config.settings import settings
from .errors import InvalidInputError
from .models import OutcomeDistribution, SpamParams
from .noise import PovmPair, noisy_cnot_apply, noisy_meas, noisy_prep
from .qops import (
    CNOT,
    H,
    DensityMatrix,
    PovmElement,
    apply_effects,
    apply_local,
    apply_unitary,
    bell_state,
    collective_cnot,
    expectation,
    pure_state,
    tensor_states,
    werner_state,
)

logger = logging.getLogger(__name__)

# Inputs for single-qubit detector tomography
_INPUT_ZERO = pure_state([1, 0])
_INPUT_ONE = pure_state([0, 1])
_INPUT_PLUS = pure_state([1, 1])
_INPUT_PLUS_I = pure_state([1, 1j])


@dataclass(frozen=True)
class CircuitOutcome:
    """Post-selected system state of a preparation-purification run"""

    accepted_state: DensityMatrix
    acceptance_prob: float
    conditional_fidelity: float

    def __post_init__(self):
        tol = settings.MATRIX_TOL
        if abs(self.acceptance_prob - self.accepted_state.trace) > tol:
            raise InvalidInputError("acceptance probability does not match the accepted weight")
        if not -tol <= self.conditional_fidelity <= 1.0 + tol:
            raise InvalidInputError(f"conditional fidelity {self.conditional_fidelity!r} outside [0, 1]")


@dataclass(frozen=True)
class PurifiedPovm:
    """Effective single-qubit measurement after m ancillas"""

    accepted: PovmPair
    normalized: PovmPair
    success_prob: float
    noise_fraction: float


def _check_depth(n: int, cap: int, what: str) -> None:
    if n < 0:
        raise InvalidInputError(f"{what} count {n} must be >= 0")
    if n > cap:
        raise InvalidInputError(f"{n} {what}s exceeds the tensor oracle cap of {cap}")


def simulate_prep_purification(
    rho0: DensityMatrix,
    q: float,
    eps: float,
    n: int,
    f: Optional[float] = None,
    collective: bool = False,
) -> CircuitOutcome:
    """Run rho0 (x) rho_f^n through CNOTs from the system and keep the all-zero outcome"""
    _check_depth(n, settings.MAX_PREP_ANCILLAS, "ancilla")
    if rho0.n_qubits != 1:
        raise InvalidInputError("system state must be a single qubit")
    if collective and eps > 0.0:
        raise InvalidInputError("collective CNOT is only modelled without gate noise")
    if f is None:
        f = rho0.population(0)
    state = tensor_states([rho0] + [noisy_prep(f)] * n)
    if n > 0:
        if collective:
            state = apply_unitary(state, collective_cnot(n))
        else:
            for target in range(1, n + 1):
                state = noisy_cnot_apply(state, eps, 0, target)
    zero_effect = noisy_meas(q)[0]
    accepted = apply_effects(state, {target: zero_effect for target in range(1, n + 1)})
    weight = accepted.trace
    fidelity = accepted.population(0) / weight if weight > 0.0 else 0.0
    logger.debug(f"prep oracle n={n}: acceptance {weight:.6g}, fidelity {fidelity:.12g}")
    return CircuitOutcome(accepted, weight, fidelity)


def effect_tomography(channel_probability: Callable[[DensityMatrix], float]) -> PovmElement:
    """Reconstruct E from tr(rho E) on |0>, |1>, |+> and |+i>"""
    p0 = channel_probability(_INPUT_ZERO)
    p1 = channel_probability(_INPUT_ONE)
    p_plus = channel_probability(_INPUT_PLUS)
    p_plus_i = channel_probability(_INPUT_PLUS_I)
    mean = (p0 + p1) / 2.0
    off_diagonal = complex(p_plus - mean, mean - p_plus_i)
    return PovmElement(np.array([[p0, off_diagonal], [np.conj(off_diagonal), p1]]))


def _finish(accepted: PovmPair) -> PurifiedPovm:
    success = float(np.trace(accepted[0].mat + accepted[1].mat).real) / 2.0
    normalized = (PovmElement(accepted[0].mat / success), PovmElement(accepted[1].mat / success))
    noise = float(normalized[0].mat[1, 1].real)
    return PurifiedPovm(accepted, normalized, success, noise)


def simulate_meas_purification(params: SpamParams, m: int) -> PurifiedPovm:
    """Effective POVM accepting only when the system and all m ancillas agree"""
    _check_depth(m, settings.MAX_MEAS_ANCILLAS, "ancilla")
    raw = noisy_meas(params.q)
    ancillas = [noisy_prep(params.f)] * m

    def outcome_probability(k: int, prepared: DensityMatrix) -> float:
        state = tensor_states([prepared] + ancillas)
        for target in range(1, m + 1):
            state = noisy_cnot_apply(state, params.eps, 0, target)
        return apply_effects(state, {qubit: raw[k] for qubit in range(m + 1)}).trace

    accepted = tuple(effect_tomography(lambda prepared, k=k: outcome_probability(k, prepared)) for k in (0, 1))
    return _finish(accepted)


def iterate_meas_transfer(params: SpamParams, m: int) -> PurifiedPovm:
    """Same effective POVM, peeling one ancilla at a time through a two-qubit circuit"""
    if m < 0:
        raise InvalidInputError(f"ancilla count {m} must be >= 0")
    raw = noisy_meas(params.q)
    ancilla = noisy_prep(params.f)

    def transfer(effect: PovmElement, k: int) -> PovmElement:
        def probability(prepared: DensityMatrix) -> float:
            state = noisy_cnot_apply(tensor_states([prepared, ancilla]), params.eps, 0, 1)
            return apply_effects(state, {0: effect, 1: raw[k]}).trace

        return effect_tomography(probability)

    accepted = []
    for k in (0, 1):
        effect = raw[k]
        for _ in range(m):
            effect = transfer(effect, k)
        accepted.append(effect)
    return _finish(tuple(accepted))


def simulate_swap(
    params: SpamParams,
    m: int,
    povm: Optional[PurifiedPovm] = None,
) -> Tuple[DensityMatrix, float, float]:
    """Swap |phi+>_{A R1} |phi+>_{R2 B} with a purified Bell measurement on R1 R2

    Returns the normalized A-B state, its fidelity with |phi+> and the
    probability of the projecting outcome.
    """
    _check_depth(m, settings.MAX_SWAP_ANCILLAS, "ancilla")
    if povm is None:
        povm = simulate_meas_purification(params, m)
    zero_effect = povm.accepted[0]
    state = tensor_states([bell_state(), bell_state()])
    state = apply_local(state, CNOT, [1, 2])
    state = apply_local(state, H, [1])
    accepted = apply_effects(state, {1: zero_effect, 2: zero_effect})
    weight = accepted.trace
    swapped = accepted.normalize()
    fidelity = expectation(swapped, bell_state())
    return swapped, fidelity, weight


def simulate_distill_round(F: float, povm: PovmPair) -> Tuple[float, float]:
    """One bilateral-CNOT round on two Werner pairs; keep pair 1 when both sides agree"""
    if not 0.25 <= F <= 1.0:
        raise InvalidInputError(f"Werner fidelity {F!r} outside [1/4, 1]")
    # qubits: A1, B1, A2, B2
    state = tensor_states([werner_state(F), werner_state(F)])
    state = apply_local(state, CNOT, [0, 2])
    state = apply_local(state, CNOT, [1, 3])
    agree_zero = apply_effects(state, {2: povm[0], 3: povm[0]})
    agree_one = apply_effects(state, {2: povm[1], 3: povm[1]})
    kept = DensityMatrix.trusted(agree_zero.mat + agree_one.mat, normalized=False)
    weight = kept.trace
    if weight <= 0.0:
        raise InvalidInputError("distillation round is never accepted")
    return expectation(kept.normalize(), bell_state()), weight


def simulate_verification_experiment(params: SpamParams) -> OutcomeDistribution:
    """Noisy prep on both qubits, noisy CNOT 0 -> 1, noisy measurement of both"""
    prep = noisy_prep(params.f)
    raw = noisy_meas(params.q)
    state = noisy_cnot_apply(tensor_states([prep, prep]), params.eps, 0, 1)
    probs = {
        f"p{i}{j}": max(apply_effects(state, {0: raw[i], 1: raw[j]}).trace, 0.0)
        for i in (0, 1)
        for j in (0, 1)
    }
    total = sum(probs.values())
    return OutcomeDistribution(**{key: value / total for key, value in probs.items()})
