"""
Optimize Task - maximum achievable coupling for a ratio pattern

Multi-start penalty search; with tie_labels, sets sharing a periodic label
share one vector.
"""
from typing import Any, Dict, List, Optional, TYPE_CHECKING

from errors import ConfigError
from pattern_solver import OptimizerOptions, maximize_coupling, verify_pattern
from .base_task import BaseTask, RunContext, coupling_metrics

if TYPE_CHECKING:
    from settings import Settings


def label_ties(labels: List[str]) -> List[int]:
    """One group id per set, equal for equal labels."""
    ids: Dict[str, int] = {}
    return [ids.setdefault(label, len(ids)) for label in labels]


class OptimizeTask(BaseTask):
    """Search lambda_max subject to the ratio pattern and the box |s| <= 1."""

    requires = ("target",)

    def __init__(self, settings: Optional["Settings"] = None):
        super().__init__(
            name="optimize",
            description="Maximize the logical coupling strength of a ratio pattern",
            settings=settings
        )

    def _execute(self, ctx: RunContext) -> Dict[str, Any]:
        resolved, options = ctx.resolved, ctx.options
        ties = None
        if options.tie_labels:
            if len(resolved.labels) != resolved.grouping.num_sets:
                raise ConfigError("tie_labels needs one label per set")
            ties = label_ties(resolved.labels)

        opts = OptimizerOptions(
            starts=options.starts,
            max_iterations=options.max_iterations,
            tolerance=options.optimizer_tolerance,
            seed=ctx.seed,
            ties=ties,
        ).resolved(ctx.settings)
        pattern = resolved.target.as_ratios()
        solution = maximize_coupling(resolved.matrices, pattern, opts, settings=ctx.settings)

        tolerance = max(ctx.tolerance, opts.tolerance)
        report = verify_pattern(solution, resolved.matrices, pattern, tol=tolerance, relative=True)
        self.log_activity(
            "optimized",
            f"{ctx.scenario.name} | starts={opts.starts} | lambda_max={solution.scale:.6g}",
        )

        metrics = {
            "lambda_max": solution.scale,
            "residual": solution.residual,
            "max_component": solution.max_component,
            "max_deviation": report.max_deviation,
        }
        metrics.update(coupling_metrics(solution.couplings))
        return {
            "metrics": metrics,
            "checks": {"pattern": report.ok},
            "records": {
                "optimizer": {"starts": opts.starts, "seed": opts.seed, "ties": ties or []},
                "solution": solution.to_dict(),
                "verification": report.to_dict(),
            },
        }
