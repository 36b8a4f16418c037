"""
Constructors for the three noisy resources: preparation, measurement and CNOT
"""

import logging
from typing import Tuple

import numpy as np

from config.settings import settings
from .errors import InvalidInputError
from .qops import CNOT, Z, DensityMatrix, PovmElement, apply_local, replace_with_maximally_mixed

logger = logging.getLogger(__name__)

PovmPair = Tuple[PovmElement, PovmElement]


def noisy_prep(f: float, coherence: complex = 0.0) -> DensityMatrix:
    """Single-qubit preparation with <0|rho|0> = f and off-diagonal `coherence`"""
    if not 0.0 <= f <= 1.0:
        raise InvalidInputError(f"preparation fidelity {f!r} outside [0, 1]")
    if abs(coherence) ** 2 > f * (1.0 - f) + settings.MATRIX_TOL:
        raise InvalidInputError(
            f"|coherence|^2 = {abs(coherence) ** 2:.6g} exceeds f(1 - f) = {f * (1.0 - f):.6g}; state not PSD"
        )
    return DensityMatrix([[f, coherence], [np.conj(coherence), 1.0 - f]])


def noisy_meas(q: float) -> PovmPair:
    """M~_k = (1 - q) M_k + q M_{k+1}"""
    if not 0.0 <= q <= 1.0:
        raise InvalidInputError(f"noise fraction {q!r} outside [0, 1]")
    return (
        PovmElement(np.diag([1.0 - q, q])),
        PovmElement(np.diag([q, 1.0 - q])),
    )


def ideal_meas() -> PovmPair:
    return noisy_meas(0.0)


def z_symmetrize(e: PovmElement) -> PovmElement:
    """(E + ZEZ)/2: mixing outcomes with and without a Pauli-Z kills coherences"""
    return PovmElement((e.mat + Z @ e.mat @ Z) / 2.0)


def noisy_cnot_apply(rho: DensityMatrix, eps: float, control: int, target: int) -> DensityMatrix:
    """(1 - eps) CNOT rho CNOT^dagger + eps (gate qubits replaced by I/2 (x) I/2)"""
    if not 0.0 <= eps <= 1.0:
        raise InvalidInputError(f"CNOT noise fraction {eps!r} outside [0, 1]")
    if control == target:
        raise InvalidInputError("control and target must differ")
    if eps == 0.0:
        return apply_local(rho, CNOT, [control, target])
    depolarized = replace_with_maximally_mixed(rho, [control, target])
    if eps == 1.0:
        return depolarized
    gated = apply_local(rho, CNOT, [control, target])
    return DensityMatrix.trusted((1.0 - eps) * gated.mat + eps * depolarized.mat, rho.normalized)
