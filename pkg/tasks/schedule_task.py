"""
Schedule Task - flip schedules for effective spins, checked by the phase oracle

Kinds:
- sequential: Gray-code recursion over every driven qubit
- parallel: one level per color class of a greedy coloring
- grouped: one level per logical set, checked on inter-set pairs only
"""
from typing import Any, Dict, Optional, TYPE_CHECKING

import numpy as np

from errors import ConfigError
from flip_scheduler import (
    ScheduleScope,
    chi_bound,
    event_table,
    greedy_coloring,
    grouped_parallel_schedule,
    parallel_schedule,
    sequential_schedule,
    verify_schedule,
)
from .base_task import BaseTask, RunContext

if TYPE_CHECKING:
    from settings import Settings

SCHEDULE_KINDS = ("sequential", "parallel", "grouped")


class ScheduleTask(BaseTask):
    """Build the requested schedules and report flip counts and worst phase errors."""

    def __init__(self, settings: Optional["Settings"] = None):
        super().__init__(
            name="schedule",
            description="Flip schedules realizing effective spins, verified over all basis states",
            settings=settings
        )

    @staticmethod
    def spin_profile(ctx: RunContext) -> np.ndarray:
        resolved = ctx.resolved
        m = resolved.layout.num_qubits
        if ctx.options.spins is not None:
            spins = np.asarray(ctx.options.spins, dtype=float)
            if spins.shape != (m,):
                raise ConfigError(f"options.spins has {spins.size} entries for {m} qubits")
            return spins
        if resolved.vectors is not None:
            return resolved.grouping.spin_profile(resolved.vectors, m)
        raise ConfigError("schedule needs options.spins or pinned vectors")

    def _execute(self, ctx: RunContext) -> Dict[str, Any]:
        resolved = ctx.resolved
        layout, grouping = resolved.layout, resolved.grouping
        spins = self.spin_profile(ctx)
        window = ctx.options.window_over_deltaJ
        unknown = sorted(set(ctx.options.schedule_kinds) - set(SCHEDULE_KINDS))
        if unknown:
            raise ConfigError(f"Unknown schedule kind(s) {unknown}; known: {', '.join(SCHEDULE_KINDS)}")

        metrics: Dict[str, float] = {}
        checks: Dict[str, bool] = {}
        records: Dict[str, Any] = {}
        artifacts: Dict[str, str] = {}
        bound = max(ctx.tolerance, 1e-9)
        for kind in ctx.options.schedule_kinds:
            scope = ScheduleScope.ALL_PAIRS
            if kind == "sequential":
                schedule = sequential_schedule(layout.num_qubits, spins, window)
            elif kind == "parallel":
                coloring = greedy_coloring(layout)
                schedule = parallel_schedule(layout, coloring, spins, window)
                metrics["parallel_chi_bound"] = chi_bound(coloring.sizes)
                records["coloring"] = coloring.to_dict()
            else:
                schedule = grouped_parallel_schedule(grouping, spins, window)
                scope = ScheduleScope.INTER_SET

            error = verify_schedule(layout, schedule, scope, grouping, settings=ctx.settings)
            metrics[f"{kind}_flips"] = schedule.flip_count
            metrics[f"{kind}_phase_error"] = error
            checks[f"{kind}_oracle"] = error <= bound
            records[f"{kind}_schedule"] = schedule.to_dict()
            artifacts[f"{kind}_events.txt"] = event_table(schedule)
            self.log_activity(
                kind,
                f"{ctx.scenario.name} | chi={schedule.flip_count} | phase_error={error:.3e}",
            )

        return {"metrics": metrics, "checks": checks, "records": records, "artifacts": artifacts}
