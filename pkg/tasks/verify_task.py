"""
Verify Task - check pinned vectors against a target pattern
"""
from typing import Any, Dict, Optional, TYPE_CHECKING

from pattern_solver import verify_pattern
from .base_task import BaseTask, RunContext, coupling_metrics

if TYPE_CHECKING:
    from settings import Settings


class VerifyTask(BaseTask):
    """Recompute the couplings of recorded vectors and compare them pair by pair."""

    requires = ("target", "vectors")

    def __init__(self, settings: Optional["Settings"] = None):
        super().__init__(
            name="verify",
            description="Check logical-subspace vectors against a target pattern",
            settings=settings
        )

    def _execute(self, ctx: RunContext) -> Dict[str, Any]:
        resolved = ctx.resolved
        report = verify_pattern(
            resolved.vectors,
            resolved.matrices,
            resolved.target,
            tol=ctx.tolerance,
            relative=ctx.options.relative,
        )
        if report.violations:
            worst = max(report.violations, key=lambda c: c.deviation)
            self.log_activity(
                "mismatch",
                f"{ctx.scenario.name} | pair=({worst.pair[0] + 1}, {worst.pair[1] + 1}) | "
                f"deviation={worst.deviation:.3e}",
            )

        metrics = {
            "max_deviation": report.max_deviation,
            "max_component": report.max_component,
        }
        if report.scale is not None:
            metrics["scale"] = report.scale
        metrics.update(coupling_metrics({c.pair: c.realized for c in report.checks}))
        return {
            "metrics": metrics,
            "checks": {"pattern": report.ok},
            "records": {"verification": report.to_dict()},
        }
