"""
Dense statevector simulation.

Basis states are indexed big-endian: qubit 0 is the most significant bit.
Bit value 0 is the Z = +1 eigenstate, so z_q = 1 - 2 * bit_q.
"""

from typing import Dict, Optional, Sequence
import logging

import numpy as np

from errors import CapacityError, ConfigError, DimensionMismatchError

logger = logging.getLogger(__name__)


def z_signs(num_qubits: int, qubit: int) -> np.ndarray:
    """z_q = +-1 of every basis state."""
    index = np.arange(1 << num_qubits)
    return 1 - 2 * ((index >> (num_qubits - 1 - qubit)) & 1)


def diagonal_energies(num_qubits: int, weights: np.ndarray) -> np.ndarray:
    """E(z) = sum_{a<b} w_ab z_a z_b for every basis state z."""
    weights = np.asarray(weights, dtype=float)
    if weights.shape != (num_qubits, num_qubits):
        raise DimensionMismatchError((num_qubits, num_qubits), weights.shape, "weight matrix")
    energies = np.zeros(1 << num_qubits)
    signs: Dict[int, np.ndarray] = {}
    for a, b in zip(*np.nonzero(np.triu(weights, k=1))):
        za = signs.setdefault(a, z_signs(num_qubits, a))
        zb = signs.setdefault(b, z_signs(num_qubits, b))
        energies += weights[a, b] * za * zb
    return energies


class Statevector:
    """2^m complex amplitudes with norm 1."""

    def __init__(self, amplitudes: Sequence[complex], settings=None):
        if settings is None:
            from settings import settings
        data = np.array(amplitudes, dtype=complex).reshape(-1)
        m = int(data.size).bit_length() - 1
        if data.size == 0 or data.size != 1 << m:
            raise ConfigError(f"Statevector length {data.size} is not a power of two")
        if m > settings.STATEVECTOR_MAX_QUBITS:
            raise CapacityError(m, settings.STATEVECTOR_MAX_QUBITS)
        norm = np.linalg.norm(data)
        if abs(norm - 1.0) > settings.NORM_TOLERANCE:
            raise ConfigError(f"Statevector norm {norm:.12f} differs from 1")
        self.data = data
        self.num_qubits = m
        self.norm_tolerance = settings.NORM_TOLERANCE

    # ==================== Construction ====================

    @classmethod
    def zeros(cls, num_qubits: int, settings=None) -> "Statevector":
        """All qubits in the Z = +1 state."""
        return cls.from_bits([0] * num_qubits, settings=settings)

    @classmethod
    def from_bits(cls, bits: Sequence[int], settings=None) -> "Statevector":
        if settings is None:
            from settings import settings
        m = len(bits)
        if m > settings.STATEVECTOR_MAX_QUBITS:
            raise CapacityError(m, settings.STATEVECTOR_MAX_QUBITS)
        data = np.zeros(1 << m, dtype=complex)
        data[int("".join(str(int(b)) for b in bits) or "0", 2)] = 1.0
        return cls(data, settings=settings)

    def copy(self) -> "Statevector":
        clone = object.__new__(Statevector)
        clone.data = self.data.copy()
        clone.num_qubits = self.num_qubits
        clone.norm_tolerance = self.norm_tolerance
        return clone

    # ==================== Gates ====================

    def _check_qubit(self, qubit: int) -> None:
        if not 0 <= qubit < self.num_qubits:
            raise ConfigError(f"Qubit {qubit} outside a {self.num_qubits}-qubit state")

    def apply_single(self, qubit: int, matrix: np.ndarray) -> "Statevector":
        self._check_qubit(qubit)
        tensor = self.data.reshape((2,) * self.num_qubits)
        tensor = np.tensordot(np.asarray(matrix, dtype=complex), tensor, axes=([1], [qubit]))
        self.data = np.moveaxis(tensor, 0, qubit).reshape(-1)
        return self

    def apply_flips(self, qubits: Sequence[int]) -> "Statevector":
        tensor = self.data.reshape((2,) * self.num_qubits)
        for q in qubits:
            self._check_qubit(q)
            tensor = np.flip(tensor, axis=q)
        self.data = np.ascontiguousarray(tensor).reshape(-1)
        return self

    def apply_cx(self, control: int, target: int) -> "Statevector":
        self._check_qubit(control)
        self._check_qubit(target)
        if control == target:
            raise ConfigError("CX needs two distinct qubits")
        tensor = self.data.reshape((2,) * self.num_qubits).copy()
        selector = [slice(None)] * self.num_qubits
        selector[control] = 1
        sub = tensor[tuple(selector)]
        axis = target if target < control else target - 1
        tensor[tuple(selector)] = np.flip(sub, axis=axis)
        self.data = tensor.reshape(-1)
        return self

    def apply_phases(self, phases: np.ndarray) -> "Statevector":
        """Multiply amplitude b by exp(-i phases[b])."""
        self.data = self.data * np.exp(-1j * np.asarray(phases))
        return self

    def apply_unitary(self, matrix: np.ndarray) -> "Statevector":
        matrix = np.asarray(matrix, dtype=complex)
        if matrix.shape != (self.data.size, self.data.size):
            raise DimensionMismatchError((self.data.size,) * 2, matrix.shape, "unitary")
        self.data = matrix @ self.data
        return self

    # ==================== Measurement ====================

    def probabilities(self) -> np.ndarray:
        return np.abs(self.data) ** 2

    def probability_one(self, qubit: int) -> float:
        self._check_qubit(qubit)
        tensor = self.probabilities().reshape((2,) * self.num_qubits)
        return float(np.sum(np.take(tensor, 1, axis=qubit)))

    def measure_z(self, qubit: int, rng: np.random.Generator) -> int:
        """Projective Z measurement; returns the bit and collapses in place."""
        p1 = min(max(self.probability_one(qubit), 0.0), 1.0)
        outcome = int(rng.random() < p1)
        tensor = self.data.reshape((2,) * self.num_qubits).copy()
        selector = [slice(None)] * self.num_qubits
        selector[qubit] = 1 - outcome
        tensor[tuple(selector)] = 0.0
        data = tensor.reshape(-1)
        self.data = data / np.linalg.norm(data)
        return outcome

    def sample(self, shots: int, rng: np.random.Generator) -> np.ndarray:
        """Basis-state indices drawn from the Born distribution."""
        probs = self.probabilities()
        return rng.choice(probs.size, size=shots, p=probs / probs.sum())

    # ==================== Comparison ====================

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.data))

    def check_norm(self) -> None:
        if abs(self.norm - 1.0) > self.norm_tolerance:
            raise ConfigError(f"Statevector norm drifted to {self.norm:.12f}")

    def fidelity(self, other: "Statevector") -> float:
        return fidelity(self.data, other.data)


def fidelity(a: np.ndarray, b: np.ndarray) -> float:
    """|<a|b>|^2, insensitive to global phase."""
    a = np.asarray(a, dtype=complex).reshape(-1)
    b = np.asarray(b, dtype=complex).reshape(-1)
    if a.shape != b.shape:
        raise DimensionMismatchError(a.shape, b.shape, "state")
    return float(abs(np.vdot(a, b)) ** 2)


def sample_measurements(
    state: Statevector,
    shots: int,
    rng: np.random.Generator,
    qubits: Optional[Sequence[int]] = None,
) -> Dict[str, int]:
    """
    Z-basis outcome counts over `qubits` (default all), keyed by bit string
    with qubit 0 leftmost. The state is not collapsed.
    """
    if shots < 1:
        raise ConfigError(f"shots must be positive, got {shots}")
    chosen = list(range(state.num_qubits)) if qubits is None else list(qubits)
    for qubit in chosen:
        state._check_qubit(qubit)
    counts: Dict[str, int] = {}
    for index in state.sample(shots, rng):
        bits = "".join(str((int(index) >> (state.num_qubits - 1 - q)) & 1) for q in chosen)
        counts[bits] = counts.get(bits, 0) + 1
    return dict(sorted(counts.items()))
