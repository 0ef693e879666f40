"""
Exact evolution under all-Z Hamiltonians.

H = sum_{a<b} f_ab s_a s_b Z_a Z_b is diagonal, so e^{-iHt} is a phase
e^{-i E(z) t} per basis state with no Trotter error.
"""

from dataclasses import dataclass
from typing import Dict, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from dynamics.statevector import Statevector, diagonal_energies
from errors import CanonicalOrderError, ConfigError, DimensionMismatchError, SelfCouplingError
from flip_scheduler.models import check_spins
from lattice.layout import PhysicalLayout
from pattern_solver.models import LogicalSolution, TargetPattern

Pair = Tuple[int, int]


@dataclass(frozen=True)
class LogicalHamiltonian:
    """H = sum_{i<j} lambda_ij Z^L_i Z^L_j over N logical qubits."""
    num_sets: int
    couplings: Dict[Pair, float]

    def __post_init__(self):
        clean = {}
        for (i, j), value in self.couplings.items():
            if i == j:
                raise SelfCouplingError(i)
            if i > j:
                raise CanonicalOrderError(i, j)
            if j >= self.num_sets:
                raise ConfigError(f"Pair ({i}, {j}) out of range for {self.num_sets} sets")
            clean[(int(i), int(j))] = float(value)
        object.__setattr__(self, "couplings", dict(sorted(clean.items())))

    @classmethod
    def from_pattern(cls, pattern: Union[TargetPattern, LogicalSolution], num_sets: Optional[int] = None):
        if isinstance(pattern, TargetPattern):
            return cls(pattern.num_sets, dict(pattern.entries))
        n = pattern.num_sets if num_sets is None else num_sets
        return cls(n, dict(pattern.couplings))

    @classmethod
    def from_map(cls, num_sets: int, couplings: Mapping[Pair, float]) -> "LogicalHamiltonian":
        """Accept pairs in either order; values of (i, j) and (j, i) add."""
        merged: Dict[Pair, float] = {}
        for (i, j), value in couplings.items():
            key = (min(i, j), max(i, j))
            merged[key] = merged.get(key, 0.0) + float(value)
        return cls(num_sets, merged)

    def value(self, i: int, j: int) -> float:
        return self.couplings.get((min(i, j), max(i, j)), 0.0)

    def weights(self) -> np.ndarray:
        w = np.zeros((self.num_sets, self.num_sets))
        for (i, j), value in self.couplings.items():
            w[i, j] = w[j, i] = value
        return w

    def scaled(self, factor: float) -> "LogicalHamiltonian":
        return LogicalHamiltonian(self.num_sets, {p: v * factor for p, v in self.couplings.items()})

    def dense(self) -> np.ndarray:
        return np.diag(diagonal_energies(self.num_sets, self.weights())).astype(complex)


def coupling_weights(
    source: Union[PhysicalLayout, LogicalHamiltonian, np.ndarray],
    profile: Optional[Sequence[float]] = None,
) -> np.ndarray:
    """Pair weights f_ab s_a s_b for a layout, logical Hamiltonian or raw matrix."""
    if isinstance(source, PhysicalLayout):
        base = source.coupling_matrix
    elif isinstance(source, LogicalHamiltonian):
        base = source.weights()
    else:
        base = np.asarray(source, dtype=float)
    if profile is None:
        return np.array(base)
    spins = check_spins(profile)
    if spins.shape != (base.shape[0],):
        raise DimensionMismatchError((base.shape[0],), spins.shape, "spin profile")
    return base * np.outer(spins, spins)


def evolve_diagonal(
    state: Statevector,
    source: Union[PhysicalLayout, LogicalHamiltonian, np.ndarray],
    t: float,
    profile: Optional[Sequence[float]] = None,
) -> Statevector:
    """
    Apply e^{-i E(z) t} with E(z) = sum_{a<b} f_ab s_a s_b z_a z_b.

    Returns a new state; the input is left untouched. An absent profile
    means every spin is +1.
    """
    weights = coupling_weights(source, profile)
    if weights.shape != (state.num_qubits, state.num_qubits):
        raise DimensionMismatchError((state.num_qubits,) * 2, weights.shape, "coupling source")
    result = state.copy()
    if t == 0:
        return result
    return result.apply_phases(diagonal_energies(state.num_qubits, weights) * t)


def evolve_multipliers(state: Statevector, layout: PhysicalLayout, multipliers: np.ndarray) -> Statevector:
    """Apply the phase sum_{a<b} f_ab M_ab z_a z_b, M_ab already carrying the window."""
    weights = layout.coupling_matrix * np.asarray(multipliers, dtype=float)
    result = state.copy()
    return result.apply_phases(diagonal_energies(state.num_qubits, weights))


def logical_evolve(state: Statevector, hamiltonian: LogicalHamiltonian, t: float) -> Statevector:
    """e^{-i H t} on an N-qubit logical state."""
    return evolve_diagonal(state, hamiltonian, t)


def encode_logical(logical: Statevector, grouping, num_qubits: int, settings=None) -> Statevector:
    """
    Map logical amplitudes onto the physical basis.

    Logical bit b of set i becomes bit b on every qubit of set i; ungrouped
    qubits stay in the Z = +1 state.
    """
    n = grouping.num_sets
    if logical.num_qubits != n:
        raise DimensionMismatchError((n,), (logical.num_qubits,), "logical state")
    data = np.zeros(1 << num_qubits, dtype=complex)
    for index, amplitude in enumerate(logical.data):
        if amplitude == 0:
            continue
        physical = 0
        for i in range(n):
            if (index >> (n - 1 - i)) & 1:
                for q in grouping.members(i):
                    physical |= 1 << (num_qubits - 1 - q)
        data[physical] = amplitude
    return Statevector(data, settings=settings)
