"""
Logical circuits to pulse programs.

Each logical operation compiles on its own and the programs are joined in
circuit order. Logical evolutions run with solved logical-subspace
vectors under a grouped flip schedule; logical CX is built from a pair
evolution and logical Hadamards on the target.
"""

from typing import List, Mapping, Optional, Sequence, Tuple
import logging
import math

import numpy as np

from errors import ConfigError, UncoupledPairError, VerificationError
from flip_scheduler.decoupling import decoupling_schedule
from flip_scheduler.parallel import grouped_parallel_schedule
from lattice.grouping import Grouping
from lattice.interaction import all_interaction_matrices
from lattice.layout import PhysicalLayout
from logical_compiler.decouple import compile_decouple
from logical_compiler.gates import GATES
from logical_compiler.ghz import compile_ghz_prep
from logical_compiler.measurement import compile_logical_measurement
from logical_compiler.program import (
    Evolve,
    LogicalCircuit,
    LogicalCX,
    LogicalEvolve,
    LogicalUnitary,
    LogicalX,
    LogicalZRotation,
    MeasureLogical,
    PrepGHZ,
    PulseProgram,
)
from logical_compiler.unitary import compile_logical_unitary, compile_logical_x, compile_logical_z
from pattern_solver.algorithm1 import algorithm1_solve
from pattern_solver.models import LogicalSolution, Pair, TargetPattern
from pattern_solver.verify import fit_scale

logger = logging.getLogger(__name__)


def _with_spectators(grouping: Grouping, num_qubits: int) -> Tuple[Grouping, bool]:
    """Grouping plus one extra set holding every ungrouped qubit, if any."""
    loose = tuple(q for q in range(num_qubits) if grouping.set_of(q) is None)
    if not loose:
        return grouping, False
    return Grouping(grouping.sets + (loose,)), True


def _solve_vectors(
    layout: PhysicalLayout,
    grouping: Grouping,
    pattern: TargetPattern,
    vectors: Optional[Sequence[Sequence[float]]],
    seed: Optional[int],
    settings,
) -> LogicalSolution:
    matrices = all_interaction_matrices(layout, grouping)
    if vectors is None:
        return algorithm1_solve(matrices, pattern, seed=seed, settings=settings)
    solution = LogicalSolution.from_vectors(vectors, matrices)
    scale = fit_scale(solution.couplings, pattern.entries)
    worst = max(abs(solution.couplings[p] - scale * pattern.entries[p]) for p in pattern.pairs)
    if scale <= 0 or worst > settings.EXACT_TOLERANCE * max(1.0, abs(scale)):
        raise VerificationError(
            f"Given vectors realize the pattern only up to {worst:.3e} (scale {scale:.6g})",
            {"scale": scale, "worst": worst},
        )
    solution.rescale_factor = scale
    return solution


def compile_logical_evolve(
    layout: PhysicalLayout,
    grouping: Grouping,
    pattern: Mapping[Pair, float],
    duration: float,
    vectors: Optional[Sequence[Sequence[float]]] = None,
    seed: Optional[int] = None,
    settings=None,
) -> PulseProgram:
    """
    exp(-i duration sum lambda_ij Z^L_i Z^L_j) on the logical subspace.

    The solved vectors realize rescale_factor * lambda, so the window lasts
    duration / rescale_factor. Ungrouped qubits are held at spin 0. An
    all-zero pattern is a decoupling window of the same duration.
    """
    if settings is None:
        from settings import settings
    if not duration > 0:
        raise ConfigError(f"Logical evolution time must be positive, got {duration}")
    m = layout.num_qubits
    grouping.validate_against(layout)
    target = TargetPattern.complete(grouping.num_sets, pattern)
    if not target.nonzero_pairs():
        program = compile_decouple(grouping, range(grouping.num_sets), duration, m)
        program.metadata["rescale_factor"] = 1.0
        return program

    solution = _solve_vectors(layout, grouping, target, vectors, seed, settings)
    window = duration / solution.rescale_factor
    full, padded = _with_spectators(grouping, m)
    spins = list(solution.vectors) + ([np.zeros(len(full.sets[-1]))] if padded else [])
    profile = full.spin_profile(spins, m)
    schedule = grouped_parallel_schedule(full, profile, window)
    program = PulseProgram(
        m,
        [Evolve(window, tuple(profile), schedule, label="logical evolution")],
        {
            "rescale_factor": solution.rescale_factor,
            "flips": schedule.flip_count,
        },
    )
    logger.info(
        f"compile_logical_evolve | sets={grouping.num_sets} | factor={solution.rescale_factor:.6g} | "
        f"window={window:.6g} | flips={schedule.flip_count}"
    )
    return program


def compile_pair_evolution(
    layout: PhysicalLayout,
    grouping: Grouping,
    i: int,
    j: int,
    angle: float,
) -> PulseProgram:
    """
    exp(-i angle Z^L_i Z^L_j) with every other set and all ungrouped qubits decoupled.

    Sets i and j keep all spins at +1, so their logical coupling is the
    sum of F_ij; the window is |angle| / that sum, with a transversal X
    sandwich on set j when the signs disagree.
    """
    if i == j:
        raise ConfigError("Pair evolution needs two distinct sets")
    m = layout.num_qubits
    a, b = grouping.members(i), grouping.members(j)
    strength = float(layout.coupling_matrix[np.ix_(a, b)].sum())
    if strength == 0:
        raise UncoupledPairError(i, j)
    if angle == 0:
        return PulseProgram(m)
    window = abs(angle / strength)
    static = (*a, *b)
    classes = [grouping.members(k) for k in range(grouping.num_sets) if k not in (i, j)]
    loose = [q for q in range(m) if grouping.set_of(q) is None]
    if loose:
        classes.append(tuple(loose))
    schedule = decoupling_schedule(window, classes, static)
    profile = tuple(1.0 if q in static else 0.0 for q in range(m))
    program = PulseProgram(m, [Evolve(window, profile, schedule, label=f"pair {i + 1}-{j + 1}")])
    if angle * strength < 0:
        flip = compile_logical_x(grouping, j, m)
        program = flip + program + flip
    return program


def compile_logical_cx(layout: PhysicalLayout, grouping: Grouping, control: int, target: int) -> PulseProgram:
    """H^L_t, exp(-i pi/4 Z^L_c Z^L_t), Rz^L_c(-pi/2) Rz^L_t(-pi/2), H^L_t."""
    m = layout.num_qubits
    hadamard = compile_logical_unitary(layout, grouping, target, GATES["H"])
    program = PulseProgram(m, list(hadamard.steps))
    program.extend(compile_pair_evolution(layout, grouping, control, target, math.pi / 4))
    program.extend(compile_logical_z(grouping, control, -math.pi / 2, m))
    program.extend(compile_logical_z(grouping, target, -math.pi / 2, m))
    program.steps.extend(hadamard.steps)
    program.metadata["logical_cx"] = 1
    return program


def compile_circuit(
    layout: PhysicalLayout,
    grouping: Grouping,
    circuit: LogicalCircuit,
    seed: Optional[int] = None,
    settings=None,
) -> PulseProgram:
    """
    Join the programs of every operation in circuit order.

    PrepGHZ assumes its set starts in |0^L>. Measurement programs keep
    their decoders under metadata["measurements"][key].
    """
    if settings is None:
        from settings import settings
    if circuit.num_sets != grouping.num_sets:
        raise ConfigError(f"Circuit acts on {circuit.num_sets} logical qubits, grouping has {grouping.num_sets} sets")
    m = layout.num_qubits
    program = PulseProgram(m, metadata={"operations": len(circuit)})
    measurements = {}
    for op in circuit.operations:
        if isinstance(op, PrepGHZ):
            part = compile_ghz_prep(layout, grouping, op.set_index)
        elif isinstance(op, LogicalUnitary):
            part = compile_logical_unitary(layout, grouping, op.set_index, op.unitary())
        elif isinstance(op, LogicalZRotation):
            part = compile_logical_z(grouping, op.set_index, op.angle, m)
        elif isinstance(op, LogicalX):
            part = compile_logical_x(grouping, op.set_index, m)
        elif isinstance(op, LogicalEvolve):
            part = compile_logical_evolve(
                layout, grouping, op.pattern, op.duration, op.vectors, seed=seed, settings=settings
            )
        elif isinstance(op, LogicalCX):
            part = compile_logical_cx(layout, grouping, op.control, op.target)
        elif isinstance(op, MeasureLogical):
            part = compile_logical_measurement(layout, grouping, op.set_index, op.basis, settings=settings)
            measurements[op.key] = {k: part.metadata[k] for k in ("decoder", "keys")}
        else:
            raise ConfigError(f"Unsupported logical operation {type(op).__name__}")
        program.steps.extend(part.steps)
        for key in ("cx_count", "swap_count", "logical_cx", "flips"):
            if key in part.metadata:
                program.metadata[key] = program.metadata.get(key, 0) + part.metadata[key]
    if measurements:
        program.metadata["measurements"] = measurements
    logger.info(
        f"compile_circuit | operations={len(circuit)} | evolves={program.evolve_count} | "
        f"time={program.total_time:.6g}"
    )
    return program


def measurement_view(program: PulseProgram, key: str) -> PulseProgram:
    """View of a compiled circuit exposing one measurement's decoder to logical_outcome."""
    info = program.metadata.get("measurements", {}).get(key)
    if info is None:
        raise ConfigError(f"Program has no logical measurement '{key}'")
    return PulseProgram(program.num_qubits, [], dict(info))
