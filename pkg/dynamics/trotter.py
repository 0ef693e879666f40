"""
First-order Trotter composition and XYZ pieces.

Pieces are applied in list order inside each step, so one step is
e^{-i H_last T/k} ... e^{-i H_first T/k}.
"""

from functools import reduce
from typing import Dict, List, Mapping, Sequence, Tuple, Union
import logging

import numpy as np
from scipy.linalg import expm

from dynamics.evolution import LogicalHamiltonian
from dynamics.pauli import PauliStringHamiltonian
from logical_compiler.gates import GATES
from errors import ConfigError, DimensionMismatchError

logger = logging.getLogger(__name__)

Piece = Union[np.ndarray, PauliStringHamiltonian, LogicalHamiltonian]
Pair = Tuple[int, int]


def as_dense(piece: Piece) -> np.ndarray:
    if isinstance(piece, PauliStringHamiltonian):
        return piece.dense_matrix()
    if isinstance(piece, LogicalHamiltonian):
        return piece.dense()
    matrix = np.asarray(piece, dtype=complex)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DimensionMismatchError((matrix.shape[0],) * 2, matrix.shape, "Hamiltonian piece")
    return matrix


def _dense_pieces(pieces: Sequence[Piece]) -> List[np.ndarray]:
    dense = [as_dense(p) for p in pieces]
    if not dense:
        raise ConfigError("Trotter evolution needs at least one piece")
    dims = {m.shape for m in dense}
    if len(dims) != 1:
        raise ConfigError(f"Pieces act on different dimensions: {sorted(dims)}")
    return dense


def trotter_evolve(pieces: Sequence[Piece], T: float, k: int) -> np.ndarray:
    """(prod_j e^{-i H_j T/k})^k as a dense unitary."""
    if k < 1:
        raise ConfigError(f"Trotter step count must be >= 1, got {k}")
    dense = _dense_pieces(pieces)
    step = reduce(lambda acc, H: expm(-1j * H * T / k) @ acc, dense, np.eye(dense[0].shape[0], dtype=complex))
    return np.linalg.matrix_power(step, k)


def exact_evolution(pieces: Sequence[Piece], T: float) -> np.ndarray:
    dense = _dense_pieces(pieces)
    return expm(-1j * sum(dense) * T)


def operator_distance(U: np.ndarray, V: np.ndarray) -> float:
    """min over phi of ||U - e^{i phi} V|| in the spectral norm, phi from tr(V^dag U)."""
    U = np.asarray(U, dtype=complex)
    V = np.asarray(V, dtype=complex)
    if U.shape != V.shape:
        raise DimensionMismatchError(U.shape, V.shape, "operator")
    overlap = np.trace(V.conj().T @ U)
    phase = np.exp(1j * np.angle(overlap)) if abs(overlap) > 0 else 1.0
    return float(np.linalg.norm(U - phase * V, ord=2))


def trotter_errors(pieces: Sequence[Piece], T: float, ks: Sequence[int]) -> Dict[int, float]:
    exact = exact_evolution(pieces, T)
    errors = {int(k): operator_distance(trotter_evolve(pieces, T, k), exact) for k in ks}
    logger.debug(f"trotter_errors | T={T} | " + " | ".join(f"k={k}: {e:.3e}" for k, e in errors.items()))
    return errors


def loglog_slope(errors: Mapping[int, float]) -> float:
    ks = np.log(np.array(list(errors), dtype=float))
    es = np.log(np.array(list(errors.values()), dtype=float))
    return float(np.polyfit(ks, es, 1)[0])


# ==================== XYZ pieces ====================

def transversal(num_qubits: int, gate: np.ndarray) -> np.ndarray:
    return reduce(np.kron, [gate] * num_qubits, np.eye(1, dtype=complex))


def xyz_pieces(
    num_qubits: int,
    alpha: Mapping[Pair, float],
    beta: Mapping[Pair, float],
    lam: Mapping[Pair, float],
) -> Tuple[PauliStringHamiltonian, PauliStringHamiltonian, PauliStringHamiltonian]:
    """H_0 = sum lambda ZZ, H_1 = sum alpha XX, H_2 = sum beta YY."""
    h0 = PauliStringHamiltonian.xyz(num_qubits, {}, {}, lam)
    h1 = PauliStringHamiltonian.xyz(num_qubits, alpha, {}, {})
    h2 = PauliStringHamiltonian.xyz(num_qubits, {}, beta, {})
    return h0, h1, h2


def conjugated_zz_evolution(num_qubits: int, couplings: Mapping[Pair, float], basis: str, t: float) -> np.ndarray:
    """
    e^{-i sum c PP t} for P in {X, Y, Z} built from a ZZ evolution.

    XX: H^n e^{-i ZZ t} H^n.  YY: (SH)^n e^{-i ZZ t} (H Sdg)^n.
    """
    zz = LogicalHamiltonian.from_map(num_qubits, couplings).dense()
    inner = np.diag(np.exp(-1j * np.diag(zz) * t))
    if basis == "Z":
        return inner
    if basis == "X":
        W = transversal(num_qubits, GATES["H"])
    elif basis == "Y":
        W = transversal(num_qubits, GATES["S"] @ GATES["H"])
    else:
        raise ConfigError(f"Unknown conjugation basis '{basis}'")
    return W @ inner @ W.conj().T


def xyz_trotter_unitary(
    num_qubits: int,
    alpha: Mapping[Pair, float],
    beta: Mapping[Pair, float],
    lam: Mapping[Pair, float],
    T: float,
    k: int,
) -> np.ndarray:
    """Alternate the ZZ, XX and YY pieces, each realized by conjugated ZZ evolutions."""
    if k < 1:
        raise ConfigError(f"Trotter step count must be >= 1, got {k}")
    dt = T / k
    step = (
        conjugated_zz_evolution(num_qubits, beta, "Y", dt)
        @ conjugated_zz_evolution(num_qubits, alpha, "X", dt)
        @ conjugated_zz_evolution(num_qubits, lam, "Z", dt)
    )
    return np.linalg.matrix_power(step, k)
