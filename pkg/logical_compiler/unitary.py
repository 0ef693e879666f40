"""
Single logical-qubit gates.

Diagonal and anti-diagonal unitaries compile to zero-time transversal
gates; everything else runs decode, the gate on the root, encode.
"""

from typing import List, Optional, Sequence, Tuple
import logging

import numpy as np

from errors import ConfigError
from lattice.grouping import Grouping
from lattice.layout import PhysicalLayout
from logical_compiler.gates import is_unitary
from logical_compiler.ghz import SlotEdge, encoding_plan
from logical_compiler.program import PulseProgram, SingleQubitGate, Step, unitary_gate

logger = logging.getLogger(__name__)

OFF_DIAGONAL_TOL = 1e-12


def _num_qubits(grouping: Grouping, num_qubits: Optional[int]) -> int:
    return max(grouping.qubits) + 1 if num_qubits is None else num_qubits


def compile_logical_z(
    grouping: Grouping,
    i: int,
    angle: float,
    num_qubits: Optional[int] = None,
    qubits: Optional[Sequence[int]] = None,
) -> PulseProgram:
    """
    exp(-i angle Z^L / 2) as Rz(angle / n) on n qubits of the set.

    qubits restricts the rotation to a subset of the set's members; the
    angles still sum to `angle`.
    """
    members = grouping.members(i)
    chosen = list(members if qubits is None else qubits)
    if not chosen or any(q not in members for q in chosen):
        raise ConfigError(f"Z rotation qubits {chosen} are not members of set {i}")
    share = angle / len(chosen)
    steps: List[Step] = [SingleQubitGate(q, "Rz", angle=share) for q in chosen] if angle else []
    return PulseProgram(_num_qubits(grouping, num_qubits), steps)


def compile_logical_x(grouping: Grouping, i: int, num_qubits: Optional[int] = None) -> PulseProgram:
    """X on every qubit of the set."""
    steps = [SingleQubitGate(q, "X") for q in grouping.members(i)]
    return PulseProgram(_num_qubits(grouping, num_qubits), steps)


def diagonal_angle(U: np.ndarray) -> float:
    """phi with U = e^{i theta} Rz(phi) for diagonal U."""
    return float(np.angle(U[1, 1] / U[0, 0]))


def compile_logical_unitary(
    layout: PhysicalLayout,
    grouping: Grouping,
    i: int,
    U: np.ndarray,
    cx_tree: Optional[Sequence[SlotEdge]] = None,
) -> PulseProgram:
    """
    U^L = encode . U_root . decode.

    Other sets stay decoupled during every window. Diagonal U is a
    transversal Z rotation and anti-diagonal U a Z rotation followed by
    transversal X, both without evolution time.
    """
    U = np.asarray(U, dtype=complex)
    if not is_unitary(U):
        raise ConfigError("Logical gate is not a 2x2 unitary")
    m = layout.num_qubits
    grouping.validate_against(layout)

    if abs(U[0, 1]) < OFF_DIAGONAL_TOL and abs(U[1, 0]) < OFF_DIAGONAL_TOL:
        program = compile_logical_z(grouping, i, diagonal_angle(U), m)
        program.metadata["route"] = "z-rotation"
        return program
    if abs(U[0, 0]) < OFF_DIAGONAL_TOL and abs(U[1, 1]) < OFF_DIAGONAL_TOL:
        # U = X diag(U[1,0], U[0,1])
        inner = np.diag([U[1, 0], U[0, 1]])
        program = compile_logical_z(grouping, i, diagonal_angle(inner), m) + compile_logical_x(grouping, i, m)
        program.metadata["route"] = "transversal-x"
        return program

    plan = encoding_plan(layout, grouping, i, cx_tree)
    steps: List[Step] = plan.decode_steps(layout)
    steps.append(unitary_gate(plan.root, U))
    steps.extend(plan.encode_steps(layout))
    program = PulseProgram(m, steps, {"route": "decode-encode", "layers": 2 * len(plan.layers)})
    logger.info(f"compile_logical_unitary | set={i + 1} | time={program.total_time:.6g}")
    return program
