"""
Compare Task - grouping method vs standard simulation cost

Reports the single (T, k, l) point with eta_0 / eta_H measured on the
scenario's own set, an optional (k, l) table, and the polynomial-scaling
register size for N logical qubits.
"""
from typing import Any, Dict, Optional, TYPE_CHECKING

from cost_model import closed_form_qubits, cost_report, cost_table, polynomial_scaling_construction
from errors import ConfigError
from .base_task import BaseTask, RunContext

if TYPE_CHECKING:
    from settings import Settings


class CompareTask(BaseTask):
    """Wall-time comparison and qubit scaling."""

    def __init__(self, settings: Optional["Settings"] = None):
        super().__init__(
            name="compare",
            description="Cost model: grouping method against SWAP-based standard simulation",
            settings=settings
        )

    def _execute(self, ctx: RunContext) -> Dict[str, Any]:
        options = ctx.options
        data: Dict[str, Any] = {"metrics": {}, "checks": {}, "records": {}, "artifacts": {}}
        ran = False

        if options.time_over_deltaJ is not None:
            self._point(ctx, data)
            ran = True
        if options.table_ks and options.table_ells:
            self._table(ctx, data)
            ran = True
        if options.scaling_sets is not None:
            self._scaling(ctx, data)
            ran = True
        if not ran:
            raise ConfigError("compare needs time_over_deltaJ, a (k, l) table or scaling_sets")
        return data

    def _point(self, ctx: RunContext, data: Dict[str, Any]) -> None:
        options, resolved = ctx.options, ctx.resolved
        if options.trotter_steps is None or options.lattice_side is None:
            raise ConfigError("a cost point needs trotter_steps and lattice_side")
        if options.set_index > resolved.grouping.num_sets:
            raise ConfigError(f"set_index {options.set_index} exceeds {resolved.grouping.num_sets} sets")
        report = cost_report(
            ctx.scenario.name,
            options.time_over_deltaJ,
            options.trotter_steps,
            options.lattice_side,
            resolved.layout,
            resolved.grouping,
            set_index=options.set_index - 1,
            settings=ctx.settings,
        )
        record = report.to_dict()
        data["records"]["cost"] = record
        data["metrics"].update({
            key: float(value) for key, value in record.items()
            if isinstance(value, (int, float)) and not isinstance(value, bool)
        })

    def _table(self, ctx: RunContext, data: Dict[str, Any]) -> None:
        options = ctx.options
        if options.time_over_deltaJ is None:
            raise ConfigError("a cost table needs time_over_deltaJ")
        eta = {}
        if "cost" in data["records"]:
            eta = {"eta_0": data["records"]["cost"]["eta_0"], "eta_H": data["records"]["cost"]["eta_H"]}
        text, records = cost_table(
            options.time_over_deltaJ,
            options.table_ks,
            options.table_ells,
            scenario=ctx.scenario.name,
            settings=ctx.settings,
            **eta,
        )
        data["records"]["cost_table"] = records
        data["artifacts"]["cost_table.txt"] = text

    def _scaling(self, ctx: RunContext, data: Dict[str, Any]) -> None:
        construction = polynomial_scaling_construction(ctx.options.scaling_sets)
        uncovered = construction.uncovered_pairs()
        closed_form = closed_form_qubits(construction.num_sets)
        data["metrics"].update({
            "num_qubits": construction.num_qubits,
            "uncovered_pairs": len(uncovered),
            "closed_form_qubits": closed_form,
        })
        data["checks"]["pair_coverage"] = not uncovered
        data["checks"]["closed_form"] = closed_form == construction.num_qubits
        data["records"]["scaling"] = construction.to_dict()
        self.log_activity(
            "scaling",
            f"{ctx.scenario.name} | N={construction.num_sets} | qubits={construction.num_qubits} | "
            f"uncovered={len(uncovered)}",
        )
