"""
Simulate Task - statevector runs of compiled circuits and Trotter sweeps

Circuit mode compiles the scenario circuit, runs it shot by shot and
compares every final state against the encoded ideal logical state for the
same logical outcomes. Trotter mode sweeps the step count of a ZZ pattern
plus a transverse X field against the dense exponential.
"""
from typing import Any, Dict, List, Mapping, Optional, TYPE_CHECKING

import numpy as np

from dynamics import (
    LogicalHamiltonian,
    PauliStringHamiltonian,
    Statevector,
    apply_logical_circuit,
    apply_program,
    encode_logical,
    loglog_slope,
    trotter_errors,
)
from errors import ConfigError
from logical_compiler import (
    LogicalCircuit,
    MeasureLogical,
    compile_circuit,
    logical_outcome,
    measurement_view,
)
from .base_task import BaseTask, RunContext
from .compile_task import program_summary

if TYPE_CHECKING:
    from settings import Settings


def ideal_logical_state(circuit: LogicalCircuit, outcomes: Mapping[str, int], settings=None) -> Statevector:
    """Logical-level run with every measurement forced to the observed outcome."""
    state = Statevector.zeros(circuit.num_sets, settings)
    for op in circuit.operations:
        if not isinstance(op, MeasureLogical):
            state = apply_logical_circuit(state, LogicalCircuit(circuit.num_sets, [op])).state
            continue
        chosen = np.asarray(op.basis[outcomes[op.key]], dtype=complex)
        state.apply_single(op.set_index, np.outer(chosen, chosen.conj()))
        norm = np.linalg.norm(state.data)
        if norm < 1e-12:
            raise ConfigError(f"Logical outcome {op.key}={outcomes[op.key]} has zero probability")
        state = Statevector(state.data / norm, settings)
    return state


def trotter_pieces(spec) -> List:
    """ZZ pattern and uniform X field as two non-commuting pieces."""
    n = spec.num_qubits
    zz = {}
    for i, j, value in spec.zz:
        if not (1 <= i <= n and 1 <= j <= n) or i == j:
            raise ConfigError(f"Trotter coupling ({i}, {j}) is not a pair of 1..{n}")
        zz[(i - 1, j - 1)] = value
    field_x = PauliStringHamiltonian.two_body(n, {}, {q: {"X": spec.field_x} for q in range(n)})
    return [LogicalHamiltonian.from_map(n, zz), field_x]


class SimulateTask(BaseTask):
    """Run the scenario's circuit on a statevector, or its Trotter sweep."""

    def __init__(self, settings: Optional["Settings"] = None):
        super().__init__(
            name="simulate",
            description="Statevector simulation of compiled programs and Trotter error sweeps",
            settings=settings
        )

    async def validate_input(self, scenario) -> bool:
        if scenario is None:
            return False
        if not scenario.circuit and scenario.options.trotter is None:
            self.log_activity("invalid", f"{scenario.name} | needs a circuit or options.trotter")
            return False
        return True

    def _execute(self, ctx: RunContext) -> Dict[str, Any]:
        data: Dict[str, Any] = {"metrics": {}, "checks": {}, "records": {}, "artifacts": {}}
        if ctx.resolved.circuit is not None:
            self._run_circuit(ctx, data)
        if ctx.options.trotter is not None:
            self._run_trotter(ctx, data)
        return data

    def _run_circuit(self, ctx: RunContext, data: Dict[str, Any]) -> None:
        resolved, options = ctx.resolved, ctx.options
        layout, grouping, circuit = resolved.layout, resolved.grouping, resolved.circuit
        m = layout.num_qubits
        program = compile_circuit(layout, grouping, circuit, seed=ctx.seed, settings=ctx.settings)
        keys = [op.key for op in circuit.operations if isinstance(op, MeasureLogical)]
        if keys:
            shots = options.shots or ctx.settings.MEASUREMENT_SHOTS
        else:
            shots = 1
        views = {key: measurement_view(program, key) for key in keys}

        rng = np.random.default_rng(ctx.seed)
        initial = Statevector.zeros(m, ctx.settings)
        ones = {key: 0 for key in keys}
        worst = 1.0
        for _ in range(shots):
            trajectory = apply_program(initial, program, layout, rng, flip_by_flip=options.flip_by_flip)
            logical = {key: logical_outcome(view, trajectory.outcomes) for key, view in views.items()}
            for key, bit in logical.items():
                ones[key] += bit
            expected = encode_logical(ideal_logical_state(circuit, logical, ctx.settings), grouping, m, ctx.settings)
            worst = min(worst, trajectory.state.fidelity(expected))

        metrics = data["metrics"]
        metrics["fidelity"] = worst
        metrics["shots"] = shots
        metrics["total_time"] = program.total_time
        for key in keys:
            metrics[f"p1_{key}"] = ones[key] / shots
        data["checks"]["fidelity"] = worst >= 1.0 - max(ctx.tolerance, 1e-9)
        data["records"]["program"] = program_summary(program)
        data["records"]["outcomes"] = {key: {"ones": ones[key], "shots": shots} for key in keys}
        self.log_activity("circuit", f"{ctx.scenario.name} | shots={shots} | min_fidelity={worst:.12f}")

    def _run_trotter(self, ctx: RunContext, data: Dict[str, Any]) -> None:
        spec = ctx.options.trotter
        if len(spec.steps) < 2:
            raise ConfigError("A Trotter sweep needs at least two step counts")
        errors = trotter_errors(trotter_pieces(spec), spec.time_over_deltaJ, spec.steps)
        slope = loglog_slope(errors)
        metrics = data["metrics"]
        metrics["trotter_slope"] = slope
        for k, error in errors.items():
            metrics[f"trotter_error_k{k}"] = error
        data["records"]["trotter"] = {
            "time_over_deltaJ": spec.time_over_deltaJ,
            "steps": list(errors),
            "errors": list(errors.values()),
            "slope": slope,
        }
        self.log_activity("trotter", f"{ctx.scenario.name} | ks={list(errors)} | slope={slope:.4f}")
