"""
Solve Task - Algorithm-1 vectors for an explicit coupling pattern

Pinned scenario vectors replay a recorded run; otherwise the choices are
drawn from the run seed.
"""
from typing import Any, Dict, Optional, TYPE_CHECKING

from pattern_solver import algorithm1_solve, verify_pattern
from .base_task import BaseTask, RunContext, coupling_metrics

if TYPE_CHECKING:
    from settings import Settings


class SolveTask(BaseTask):
    """Solve s_i^T F_ij s_j = lambda_ij up to one rescale and check the result."""

    requires = ("target",)

    def __init__(self, settings: Optional["Settings"] = None):
        super().__init__(
            name="solve",
            description="Algorithm-1 logical-subspace vectors for a target pattern",
            settings=settings
        )

    def _execute(self, ctx: RunContext) -> Dict[str, Any]:
        resolved = ctx.resolved
        pinned = dict(enumerate(resolved.vectors)) if resolved.vectors is not None else None
        solution = algorithm1_solve(
            resolved.matrices, resolved.target, seed=ctx.seed, pinned=pinned, settings=ctx.settings
        )
        # the solved pattern is the target times the rescale factor
        realized_target = resolved.target.scaled(solution.rescale_factor)
        report = verify_pattern(solution, resolved.matrices, realized_target, tol=ctx.tolerance, relative=True)
        self.log_activity(
            "solved",
            f"{ctx.scenario.name} | rescale={solution.rescale_factor:.6g} | residual={solution.residual:.3e}",
        )

        metrics = {
            "rescale_factor": solution.rescale_factor,
            "residual": solution.residual,
            "max_component": solution.max_component,
            "max_deviation": report.max_deviation,
        }
        metrics.update(coupling_metrics(solution.couplings))
        return {
            "metrics": metrics,
            "checks": {"pattern": report.ok},
            "records": {"solution": solution.to_dict(), "verification": report.to_dict()},
        }
