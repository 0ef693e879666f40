"""
Many-body Z interactions from two-body logical evolutions.

Exact route: with U = exp(-i pi/4 sum_j Z_p Z_j) over a star centred on the
pivot p, U X_p U^dag = A_p Z_2 ... Z_N where A is +-X or +-Y depending on
the number of targets. One more pivot rotation W with W A W^dag = Z turns
exp(-i w A Z..Z) into exp(-i w Z..Z).

Commutator route: exp(iH_A t) exp(iH_B t) exp(-iH_A t) exp(-iH_B t)
approximates exp(-[H_A, H_B] t^2) to second order.
"""

from typing import List, Sequence, Tuple
import math

import numpy as np

from errors import ConfigError
from logical_compiler.gates import GATES, rx
from logical_compiler.program import LogicalCircuit, LogicalEvolve, LogicalUnitary, LogicalX, LogicalZRotation


def pivot_operator(num_targets: int) -> Tuple[int, str]:
    """(sign, P) with U X_p U^dag = sign * P_p Z_rest for a star of num_targets - 1 partners."""
    n = num_targets
    if n % 2:
        return (-1) ** ((n - 1) // 2), "X"
    return (-1) ** (n // 2 + 1), "Y"


def _to_z(pauli: str) -> np.ndarray:
    """W with W P W^dag = Z."""
    if pauli == "X":
        return GATES["H"]
    return GATES["H"] @ GATES["Sdg"]


def _star(pivot: int, partners: Sequence[int], strength: float):
    return {(min(pivot, j), max(pivot, j)): strength for j in partners}


def many_body_z_exact(
    num_sets: int,
    targets: Sequence[int],
    omega: float,
    coupling: float = 1.0,
) -> LogicalCircuit:
    """
    Circuit for exp(-i omega Z_t1 Z_t2 ... Z_tN).

    The star evolutions use coupling lambda for pi/(4 lambda); the inverse
    star is the forward star conjugated by X on the pivot.
    """
    targets = list(dict.fromkeys(int(t) for t in targets))
    if not targets:
        raise ConfigError("Many-body interaction needs at least one target")
    if coupling <= 0:
        raise ConfigError(f"Star coupling must be positive, got {coupling}")
    circuit = LogicalCircuit(num_sets)
    pivot, partners = targets[0], targets[1:]
    if not partners:
        return circuit.append(LogicalZRotation(pivot, 2 * omega))

    sign, pauli = pivot_operator(len(targets))
    W = _to_z(pauli)
    star = _star(pivot, partners, coupling)
    window = math.pi / (4 * coupling)
    for op in (
        LogicalUnitary(pivot, W.conj().T, label="W^dag"),
        LogicalX(pivot),
        LogicalEvolve(star, window),
        LogicalX(pivot),
        LogicalUnitary(pivot, rx(2 * sign * omega), label="Rx"),
        LogicalEvolve(star, window),
        LogicalUnitary(pivot, W, label="W"),
    ):
        circuit.append(op)
    return circuit


def _pauli_z_evolution(pivot: int, partner: int, pauli: str, angle: float) -> List:
    """exp(-i angle P_pivot Z_partner) as W exp(-i angle Z Z) W^dag."""
    if angle == 0:
        return []
    W = GATES["H"] if pauli == "X" else GATES["S"] @ GATES["H"]
    strength = 1.0 if angle > 0 else -1.0
    return [
        LogicalUnitary(pivot, W.conj().T, label="W^dag"),
        LogicalEvolve({(min(pivot, partner), max(pivot, partner)): strength}, abs(angle)),
        LogicalUnitary(pivot, W, label="W"),
    ]


def many_body_z_commutator(
    num_sets: int,
    pivot: int,
    partner_a: int,
    partner_b: int,
    lam: float,
    mu: float,
    t: float,
) -> LogicalCircuit:
    """
    Group commutator of H_A = lam X_p Z_a and H_B = mu Y_p Z_b.

    Approximates exp(-2i lam mu t^2 Z_p Z_a Z_b) with O(t^3) error.
    """
    if len({pivot, partner_a, partner_b}) != 3:
        raise ConfigError("Commutator route needs three distinct logical qubits")
    circuit = LogicalCircuit(num_sets)
    for pauli, partner, angle in (
        ("Y", partner_b, mu * t),
        ("X", partner_a, lam * t),
        ("Y", partner_b, -mu * t),
        ("X", partner_a, -lam * t),
    ):
        for op in _pauli_z_evolution(pivot, partner, pauli, angle):
            circuit.append(op)
    return circuit
