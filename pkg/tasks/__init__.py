"""
LatticeIQ Tasks

One task per subcommand; run-all dispatches each fixture to the task of
its scenario command.
"""

from .base_task import BaseTask, RunContext
from .solve_task import SolveTask
from .optimize_task import OptimizeTask
from .verify_task import VerifyTask
from .schedule_task import ScheduleTask
from .compile_task import CompileTask
from .simulate_task import SimulateTask
from .compare_task import CompareTask
from .render_task import RenderTask

TASKS = {
    "solve": SolveTask,
    "optimize": OptimizeTask,
    "verify": VerifyTask,
    "schedule": ScheduleTask,
    "compile": CompileTask,
    "simulate": SimulateTask,
    "compare": CompareTask,
    "render": RenderTask,
}

__all__ = [
    "BaseTask",
    "RunContext",
    "SolveTask",
    "OptimizeTask",
    "VerifyTask",
    "ScheduleTask",
    "CompileTask",
    "SimulateTask",
    "CompareTask",
    "RenderTask",
    "TASKS",
]
