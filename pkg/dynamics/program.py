"""
Executing pulse programs and logical circuits on statevectors.
"""

from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence
import logging

import numpy as np

from dynamics.evolution import LogicalHamiltonian, evolve_diagonal, evolve_multipliers
from dynamics.statevector import Statevector
from errors import DimensionMismatchError, ProgramError
from flip_scheduler.models import FlipSchedule
from lattice.layout import PhysicalLayout
from logical_compiler.gates import GATES, rz
from logical_compiler.program import (
    Conditional,
    Evolve,
    LogicalCircuit,
    LogicalCX,
    LogicalEvolve,
    LogicalUnitary,
    LogicalX,
    LogicalZRotation,
    MeasureLogical,
    MeasureZ,
    PrepGHZ,
    PulseProgram,
    SingleQubitGate,
    Step,
)

logger = logging.getLogger(__name__)


@dataclass
class Trajectory:
    """Final state plus the classical register of one run."""
    state: Statevector
    outcomes: Dict[str, int] = field(default_factory=dict)


def schedule_multiplier_matrix(schedule: FlipSchedule, num_qubits: int) -> np.ndarray:
    """
    Full m x m multiplier matrix of an Evolve window.

    Undriven qubits keep sign +1 throughout, so pairs touching them get the
    full window.
    """
    durations, driven = schedule.segments()
    signs = np.ones((len(durations), num_qubits))
    signs[:, list(schedule.qubits)] = driven
    return (signs * durations[:, None]).T @ signs


def _flip_by_flip(state: Statevector, layout: PhysicalLayout, schedule: FlipSchedule) -> Statevector:
    """Literal simulation: free evolution between events, X flips at event times."""
    last = 0.0
    for event in schedule.events:
        at = float(event.at)
        if at > last:
            state = evolve_diagonal(state, layout, (at - last) * schedule.window)
        state.apply_flips(event.qubits)
        last = at
    if last < 1.0:
        state = evolve_diagonal(state, layout, (1.0 - last) * schedule.window)
    return state


def _apply_evolve(state: Statevector, step: Evolve, layout: PhysicalLayout, flip_by_flip: bool) -> Statevector:
    if step.schedule is None:
        return evolve_diagonal(state, layout, step.duration, step.profile)
    if flip_by_flip:
        return _flip_by_flip(state, layout, step.schedule)
    return evolve_multipliers(state, layout, schedule_multiplier_matrix(step.schedule, state.num_qubits))


def _run(
    state: Statevector,
    steps: Sequence[Step],
    layout: PhysicalLayout,
    rng: np.random.Generator,
    outcomes: Dict[str, int],
    flip_by_flip: bool,
) -> Statevector:
    for step in steps:
        if isinstance(step, Evolve):
            state = _apply_evolve(state, step, layout, flip_by_flip)
        elif isinstance(step, SingleQubitGate):
            state.apply_single(step.qubit, step.unitary())
        elif isinstance(step, MeasureZ):
            outcomes[step.key] = state.measure_z(step.qubit, rng)
        elif isinstance(step, Conditional):
            if step.key not in outcomes:
                raise ProgramError(f"Conditional on unmeasured key '{step.key}'")
            branch = step.branches.get(outcomes[step.key], ())
            state = _run(state, branch, layout, rng, outcomes, flip_by_flip)
        else:
            raise ProgramError(f"Unknown step type {type(step).__name__}")
    return state


def apply_program(
    state: Statevector,
    program: PulseProgram,
    layout: PhysicalLayout,
    rng: Optional[np.random.Generator] = None,
    flip_by_flip: bool = False,
) -> Trajectory:
    """
    Run a pulse program on a copy of state.

    Evolve windows with a schedule use its exact multipliers; flip_by_flip
    replays the individual X flips instead (same result, slower).
    Measurements draw from rng, seeded from the default seed when absent.
    """
    if program.num_qubits != state.num_qubits or layout.num_qubits != state.num_qubits:
        raise DimensionMismatchError(
            (state.num_qubits,), (program.num_qubits, layout.num_qubits), "program and layout qubits"
        )
    if rng is None:
        from settings import settings

        rng = np.random.default_rng(settings.DEFAULT_SEED)
    outcomes: Dict[str, int] = {}
    final = _run(state.copy(), program.steps, layout, rng, outcomes, flip_by_flip)
    final.check_norm()
    return Trajectory(final, outcomes)


# ==================== Logical level ====================

def _measure_logical(state: Statevector, op: MeasureLogical, rng: np.random.Generator) -> int:
    psi, perp = (np.asarray(v, dtype=complex) for v in op.basis)
    # rotate psi -> |0>, perp -> |1>, measure Z, rotate back
    R = np.vstack([psi.conj(), perp.conj()])
    state.apply_single(op.set_index, R)
    outcome = state.measure_z(op.set_index, rng)
    state.apply_single(op.set_index, R.conj().T)
    return outcome


def apply_logical_circuit(
    state: Statevector,
    circuit: LogicalCircuit,
    rng: Optional[np.random.Generator] = None,
) -> Trajectory:
    """Ideal logical-level simulation, one qubit per set."""
    if state.num_qubits != circuit.num_sets:
        raise DimensionMismatchError((circuit.num_sets,), (state.num_qubits,), "logical state")
    if rng is None:
        from settings import settings

        rng = np.random.default_rng(settings.DEFAULT_SEED)
    state = state.copy()
    outcomes: Dict[str, int] = {}
    for op in circuit.operations:
        if isinstance(op, PrepGHZ):
            state.apply_single(op.set_index, GATES["H"])
        elif isinstance(op, LogicalUnitary):
            state.apply_single(op.set_index, op.unitary())
        elif isinstance(op, LogicalZRotation):
            state.apply_single(op.set_index, rz(op.angle))
        elif isinstance(op, LogicalX):
            state.apply_single(op.set_index, GATES["X"])
        elif isinstance(op, LogicalEvolve):
            hamiltonian = LogicalHamiltonian(circuit.num_sets, dict(op.pattern))
            state = evolve_diagonal(state, hamiltonian, op.duration)
        elif isinstance(op, LogicalCX):
            state.apply_cx(op.control, op.target)
        elif isinstance(op, MeasureLogical):
            outcomes[op.key] = _measure_logical(state, op, rng)
        else:
            raise ProgramError(f"Unknown logical operation {type(op).__name__}")
    state.check_norm()
    return Trajectory(state, outcomes)


def circuit_unitary(circuit: LogicalCircuit) -> np.ndarray:
    """Dense unitary of a measurement-free logical circuit, column by column."""
    dim = 1 << circuit.num_sets
    columns = []
    for b in range(dim):
        basis = np.zeros(dim, dtype=complex)
        basis[b] = 1.0
        columns.append(apply_logical_circuit(Statevector(basis), circuit).state.data)
    return np.array(columns).T
