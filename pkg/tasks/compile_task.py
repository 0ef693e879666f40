"""
Compile Task - logical circuit to physical pulse program
"""
from typing import Any, Dict, Optional, TYPE_CHECKING

from logical_compiler import compile_circuit, program_listing
from .base_task import BaseTask, RunContext

if TYPE_CHECKING:
    from settings import Settings

COUNTERS = ("cx_count", "swap_count", "logical_cx", "flips")


def program_summary(program) -> Dict[str, Any]:
    summary = {
        "num_qubits": program.num_qubits,
        "steps": len(program.steps),
        "evolve_count": program.evolve_count,
        "total_time": program.total_time,
    }
    summary.update({key: program.metadata[key] for key in COUNTERS if key in program.metadata})
    return summary


class CompileTask(BaseTask):
    """Compile the scenario circuit and emit its step listing."""

    requires = ("circuit",)

    def __init__(self, settings: Optional["Settings"] = None):
        super().__init__(
            name="compile",
            description="Compile a logical circuit into evolution windows and single-qubit gates",
            settings=settings
        )

    def _execute(self, ctx: RunContext) -> Dict[str, Any]:
        resolved = ctx.resolved
        program = compile_circuit(
            resolved.layout, resolved.grouping, resolved.circuit, seed=ctx.seed, settings=ctx.settings
        )
        program.validate()
        summary = program_summary(program)
        self.log_activity(
            "compiled",
            f"{ctx.scenario.name} | steps={summary['steps']} | time={program.total_time:.6g}",
        )
        return {
            "metrics": {k: float(v) for k, v in summary.items()},
            "checks": {"program_valid": True},
            "records": {"program": summary},
            "artifacts": {"program.txt": program_listing(program)},
        }
