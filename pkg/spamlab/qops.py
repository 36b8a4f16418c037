"""
Dense complex-matrix engine for multi-qubit density matrices, unitaries and POVMs.

Qubit 0 is the leftmost tensor factor, i.e. the most significant bit of a
basis index. Every function here is pure; inputs are never modified.
"""

import functools
import logging
import string
from dataclasses import InitVar, dataclass
from typing import Iterable, List, Mapping, Sequence, Union

import numpy as np
import numpy.typing as npt

from config.settings import settings
from .errors import InvalidInputError

logger = logging.getLogger(__name__)

ComplexMatrix = npt.NDArray[np.complex128]

_LETTERS = string.ascii_letters


def _frozen(a) -> ComplexMatrix:
    arr = np.array(a, dtype=np.complex128, copy=True)
    arr.setflags(write=False)
    return arr


def as_matrix(a) -> ComplexMatrix:
    """Coerce to a read-only square complex matrix"""
    arr = _frozen(a)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise InvalidInputError(f"expected a square matrix, got shape {arr.shape}")
    return arr


def qubit_count(dim: int) -> int:
    n = dim.bit_length() - 1
    if dim < 1 or (1 << n) != dim:
        raise InvalidInputError(f"dimension {dim} is not a power of 2")
    return n


def is_hermitian(a: ComplexMatrix, tol: float = settings.MATRIX_TOL) -> bool:
    return bool(np.max(np.abs(a - a.conj().T), initial=0.0) <= tol)


def is_unitary(u: ComplexMatrix, tol: float = settings.MATRIX_TOL) -> bool:
    eye = np.eye(u.shape[0])
    return bool(np.max(np.abs(u.conj().T @ u - eye)) < tol)


I2 = _frozen(np.eye(2))
X = _frozen([[0, 1], [1, 0]])
Z = _frozen([[1, 0], [0, -1]])
H = _frozen(np.array([[1, 1], [1, -1]]) / np.sqrt(2))
P0 = _frozen([[1, 0], [0, 0]])
P1 = _frozen([[0, 0], [0, 1]])
CNOT = _frozen([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Multi-qubit state; unnormalized when it carries a post-selected weight

    A normalized state has trace 1. An unnormalized one has trace in [0, 1];
    zero is a legitimate weight for an outcome that is never accepted.
    """

    mat: ComplexMatrix
    normalized: bool = True
    check_psd: InitVar[bool] = True

    def __post_init__(self, check_psd: bool):
        mat = as_matrix(self.mat)
        object.__setattr__(self, "mat", mat)
        n = qubit_count(mat.shape[0])
        if n > settings.MAX_QUBITS:
            raise InvalidInputError(f"{n} qubits exceeds the cap of {settings.MAX_QUBITS}")
        tol = settings.MATRIX_TOL
        if not is_hermitian(mat, tol):
            raise InvalidInputError("density matrix is not Hermitian")
        trace = float(np.trace(mat).real)
        if self.normalized and abs(trace - 1.0) > tol:
            raise InvalidInputError(f"normalized state has trace {trace!r}")
        if trace < -tol or trace > 1.0 + tol:
            raise InvalidInputError(f"trace {trace!r} outside [0, 1]")
        if check_psd:
            lowest = float(np.linalg.eigvalsh(mat)[0])
            if lowest < -tol:
                raise InvalidInputError(f"density matrix is not PSD (eigenvalue {lowest:.3e})")

    @classmethod
    def trusted(cls, mat: ComplexMatrix, normalized: bool) -> "DensityMatrix":
        """Wrap the output of a positivity-preserving map without the eigen check"""
        return cls(mat, normalized, check_psd=False)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    @property
    def n_qubits(self) -> int:
        return qubit_count(self.dim)

    @property
    def trace(self) -> float:
        return float(np.trace(self.mat).real)

    def normalize(self) -> "DensityMatrix":
        trace = self.trace
        if trace <= 0.0:
            raise InvalidInputError("cannot normalize a state of zero weight")
        return DensityMatrix.trusted(self.mat / trace, normalized=True)

    def population(self, index: int) -> float:
        """<index|rho|index> for a computational basis index"""
        return float(self.mat[index, index].real)


@dataclass(frozen=True, eq=False)
class PovmElement:
    """Measurement effect 0 <= E <= 1"""

    mat: ComplexMatrix

    def __post_init__(self):
        mat = as_matrix(self.mat)
        object.__setattr__(self, "mat", mat)
        tol = settings.MATRIX_TOL
        if not is_hermitian(mat, tol):
            raise InvalidInputError("POVM element is not Hermitian")
        eigenvalues = np.linalg.eigvalsh(mat)
        if eigenvalues[0] < -tol or eigenvalues[-1] > 1.0 + tol:
            raise InvalidInputError(f"POVM element eigenvalues {eigenvalues} outside [0, 1]")

    def diagonal(self) -> List[float]:
        return [float(v.real) for v in np.diag(self.mat)]


MatrixLike = Union[ComplexMatrix, DensityMatrix, PovmElement]


def _raw(a: MatrixLike) -> ComplexMatrix:
    return a.mat if isinstance(a, (DensityMatrix, PovmElement)) else as_matrix(a)


def kron(a: MatrixLike, b: MatrixLike) -> ComplexMatrix:
    """Kronecker product; `a` holds the more significant qubits"""
    return _frozen(np.kron(_raw(a), _raw(b)))


def kron_all(factors: Iterable[MatrixLike]) -> ComplexMatrix:
    """Kronecker product of one or more factors, always as a bare matrix"""
    matrices = [_raw(a) for a in factors]
    if not matrices:
        raise InvalidInputError("kron_all needs at least one factor")
    return _frozen(functools.reduce(np.kron, matrices))


def tensor_states(states: Sequence[DensityMatrix]) -> DensityMatrix:
    normalized = all(s.normalized for s in states)
    return DensityMatrix.trusted(kron_all(states), normalized=normalized)


def basis_state(bits: str) -> DensityMatrix:
    """|bits><bits| with bits[0] on qubit 0"""
    dim = 1 << len(bits)
    mat = np.zeros((dim, dim), dtype=np.complex128)
    index = int(bits, 2)
    mat[index, index] = 1.0
    return DensityMatrix(mat)


def pure_state(vector: Sequence[complex]) -> DensityMatrix:
    psi = np.asarray(vector, dtype=np.complex128)
    psi = psi / np.linalg.norm(psi)
    return DensityMatrix(np.outer(psi, psi.conj()))


def bell_state() -> DensityMatrix:
    """|phi+><phi+| with (|00> + |11>)/sqrt(2)"""
    return pure_state([1, 0, 0, 1])


def werner_state(F: float) -> DensityMatrix:
    """F|phi+><phi+| + (1 - F)/3 (I - |phi+><phi+|)"""
    if not 0.0 <= F <= 1.0:
        raise InvalidInputError(f"Werner fidelity {F!r} outside [0, 1]")
    phi = bell_state().mat
    return DensityMatrix(F * phi + (1.0 - F) / 3.0 * (np.eye(4) - phi))


def apply_unitary(rho: DensityMatrix, u: MatrixLike) -> DensityMatrix:
    """U rho U^dagger"""
    u = _raw(u)
    if u.shape != rho.mat.shape:
        raise InvalidInputError(f"unitary of shape {u.shape} does not act on a {rho.dim}-dim state")
    if not is_unitary(u):
        raise InvalidInputError("operator is not unitary")
    return DensityMatrix.trusted(u @ rho.mat @ u.conj().T, rho.normalized)


def _check_qubits(qubits: Sequence[int], n_qubits: int) -> List[int]:
    qubits = list(qubits)
    if len(set(qubits)) != len(qubits):
        raise InvalidInputError(f"qubit indices {qubits} are not distinct")
    for q in qubits:
        if not 0 <= q < n_qubits:
            raise InvalidInputError(f"qubit index {q} out of range for {n_qubits} qubits")
    return qubits


def partial_trace(rho: DensityMatrix, keep: Sequence[int]) -> DensityMatrix:
    """Reduced state on `keep`, in the listed order"""
    n = rho.n_qubits
    keep = _check_qubits(keep, n)
    rows = list(_LETTERS[:n])
    cols = list(_LETTERS[n:2 * n])
    for q in range(n):
        if q not in keep:
            cols[q] = rows[q]
    out = "".join(rows[q] for q in keep) + "".join(cols[q] for q in keep)
    tensor = rho.mat.reshape([2] * (2 * n))
    reduced = np.einsum(f"{''.join(rows)}{''.join(cols)}->{out}", tensor)
    dim = 1 << len(keep)
    return DensityMatrix.trusted(np.reshape(reduced, (dim, dim)), rho.normalized)


def apply_local(rho: DensityMatrix, gate: MatrixLike, qubits: Sequence[int]) -> DensityMatrix:
    """G rho G^dagger for a gate on `qubits` (first listed = most significant gate qubit)"""
    gate = _raw(gate)
    n = rho.n_qubits
    qubits = _check_qubits(qubits, n)
    k = len(qubits)
    if gate.shape != (1 << k, 1 << k):
        raise InvalidInputError(f"gate of shape {gate.shape} does not act on {k} qubits")
    rows = _LETTERS[:n]
    cols = _LETTERS[n:2 * n]
    g_out = _LETTERS[2 * n:2 * n + k]
    h_out = _LETTERS[2 * n + k:2 * n + 2 * k]
    out_rows = list(rows)
    out_cols = list(cols)
    for i, q in enumerate(qubits):
        out_rows[q] = g_out[i]
        out_cols[q] = h_out[i]
    g = gate.reshape([2] * (2 * k))
    subscripts = (
        f"{g_out}{''.join(rows[q] for q in qubits)},"
        f"{rows}{cols},"
        f"{h_out}{''.join(cols[q] for q in qubits)}"
        f"->{''.join(out_rows)}{''.join(out_cols)}"
    )
    tensor = np.einsum(subscripts, g, rho.mat.reshape([2] * (2 * n)), g.conj(), optimize=True)
    return DensityMatrix.trusted(tensor.reshape(rho.dim, rho.dim), rho.normalized)


def embed_gate(gate: MatrixLike, qubits: Sequence[int], n_qubits: int) -> ComplexMatrix:
    """Full-register matrix of a gate on `qubits`, identity elsewhere"""
    gate = _raw(gate)
    qubits = _check_qubits(qubits, n_qubits)
    k = len(qubits)
    rows = _LETTERS[:n_qubits]
    cols = _LETTERS[n_qubits:2 * n_qubits]
    g_out = _LETTERS[2 * n_qubits:2 * n_qubits + k]
    out_rows = list(rows)
    for i, q in enumerate(qubits):
        out_rows[q] = g_out[i]
    identity = np.eye(1 << n_qubits, dtype=np.complex128).reshape([2] * (2 * n_qubits))
    subscripts = f"{g_out}{''.join(rows[q] for q in qubits)},{rows}{cols}->{''.join(out_rows)}{cols}"
    full = np.einsum(subscripts, gate.reshape([2] * (2 * k)), identity)
    dim = 1 << n_qubits
    return _frozen(full.reshape(dim, dim))


def replace_with_maximally_mixed(rho: DensityMatrix, qubits: Sequence[int]) -> DensityMatrix:
    """Marginal of the other qubits tensored with I/2 on each of `qubits`"""
    n = rho.n_qubits
    qubits = _check_qubits(qubits, n)
    others = [q for q in range(n) if q not in qubits]
    rows = _LETTERS[:n]
    cols = _LETTERS[n:2 * n]
    marginal = partial_trace(rho, others).mat.reshape([2] * (2 * len(others)))
    operands = [marginal]
    specs = [''.join(rows[q] for q in others) + ''.join(cols[q] for q in others)]
    for q in qubits:
        operands.append(np.eye(2) / 2.0)
        specs.append(rows[q] + cols[q])
    tensor = np.einsum(f"{','.join(specs)}->{rows}{cols}", *operands)
    return DensityMatrix.trusted(tensor.reshape(rho.dim, rho.dim), rho.normalized)


def apply_effects(rho: DensityMatrix, effects: Mapping[int, MatrixLike]) -> DensityMatrix:
    """tr_M[(I (x) E) rho] for effects E on the measured qubits M; unnormalized result on the rest"""
    n = rho.n_qubits
    measured = _check_qubits(list(effects), n)
    kept = [q for q in range(n) if q not in measured]
    rows = _LETTERS[:n]
    cols = _LETTERS[n:2 * n]
    operands = [rho.mat.reshape([2] * (2 * n))]
    specs = [rows + cols]
    for q in measured:
        effect = _raw(effects[q])
        if effect.shape != (2, 2):
            raise InvalidInputError(f"effect on qubit {q} is not single-qubit")
        operands.append(effect)
        specs.append(cols[q] + rows[q])
    out = "".join(rows[q] for q in kept) + "".join(cols[q] for q in kept)
    tensor = np.einsum(f"{','.join(specs)}->{out}", *operands, optimize=True)
    dim = 1 << len(kept)
    return DensityMatrix.trusted(np.reshape(tensor, (dim, dim)), normalized=False)


def collective_cnot(n_targets: int) -> ComplexMatrix:
    """V_{n+1} = |0><0| (x) I^n + |1><1| (x) X^n, control on qubit 0"""
    if n_targets < 1:
        raise InvalidInputError("collective CNOT needs at least one target")
    identity = np.eye(1 << n_targets)
    flips = kron_all([X] * n_targets)
    return _frozen(np.kron(P0, identity) + np.kron(P1, flips))


def pairwise_cnot_product(n_targets: int) -> ComplexMatrix:
    """Product of two-qubit CNOTs from qubit 0 onto each of qubits 1..n"""
    if n_targets < 1:
        raise InvalidInputError("collective CNOT needs at least one target")
    n = n_targets + 1
    product = np.eye(1 << n, dtype=np.complex128)
    for target in range(1, n):
        product = embed_gate(CNOT, [0, target], n) @ product
    return _frozen(product)


def expectation(rho: DensityMatrix, op: MatrixLike) -> float:
    """Re tr(rho op)"""
    op = _raw(op)
    if op.shape != rho.mat.shape:
        raise InvalidInputError(f"operator of shape {op.shape} does not act on a {rho.dim}-dim state")
    return float(np.einsum("ij,ji->", rho.mat, op).real)


def check_complete(povm: Sequence[PovmElement]) -> None:
    total = sum(e.mat for e in povm)
    deviation = float(np.max(np.abs(total - np.eye(total.shape[0]))))
    if deviation > settings.MATRIX_TOL:
        raise InvalidInputError(f"POVM is incomplete (sum deviates from identity by {deviation:.3e})")


def povm_probabilities(rho: DensityMatrix, povm: Sequence[PovmElement]) -> List[float]:
    """Born rule tr(rho E_k) for a complete POVM"""
    check_complete(povm)
    probabilities = []
    for element in povm:
        p = expectation(rho, element)
        probabilities.append(max(p, 0.0) if p > -settings.MATRIX_TOL else p)
    return probabilities


def trace_distance(a: MatrixLike, b: MatrixLike) -> float:
    """T(A, B) = 1/2 ||A - B||_1 for Hermitian A, B"""
    diff = _raw(a) - _raw(b)
    if not is_hermitian(diff):
        raise InvalidInputError("trace distance needs Hermitian operators")
    return 0.5 * float(np.sum(np.abs(np.linalg.eigvalsh(diff))))


def max_distance(a: MatrixLike, b: MatrixLike) -> float:
    """Largest entrywise deviation"""
    return float(np.max(np.abs(_raw(a) - _raw(b))))
