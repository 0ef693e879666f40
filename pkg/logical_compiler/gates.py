"""
Single-qubit gate matrices.

Computational bit 0 is the Z = +1 state.
"""

from typing import Dict

import numpy as np

GATES: Dict[str, np.ndarray] = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
    "H": np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2),
    "S": np.array([[1, 0], [0, 1j]], dtype=complex),
    "Sdg": np.array([[1, 0], [0, -1j]], dtype=complex),
}


def rz(angle: float) -> np.ndarray:
    """exp(-i angle Z / 2)."""
    return np.diag([np.exp(-0.5j * angle), np.exp(0.5j * angle)])


def rx(angle: float) -> np.ndarray:
    """exp(-i angle X / 2)."""
    c, s = np.cos(angle / 2), np.sin(angle / 2)
    return np.array([[c, -1j * s], [-1j * s, c]])


def is_unitary(U: np.ndarray, atol: float = 1e-9) -> bool:
    U = np.asarray(U, dtype=complex)
    return U.shape == (2, 2) and np.allclose(U.conj().T @ U, np.eye(2), atol=atol)


def equal_up_to_phase(U: np.ndarray, V: np.ndarray, atol: float = 1e-9) -> bool:
    overlap = np.trace(np.asarray(V).conj().T @ np.asarray(U))
    if abs(overlap) < atol:
        return False
    return np.allclose(U, V * overlap / abs(overlap), atol=atol)
