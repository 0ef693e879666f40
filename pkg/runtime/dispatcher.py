"""
Task dispatcher: maps task_key strings to singleton task instances and
provides a single entry-point for executing a scenario.
"""

from __future__ import annotations

import logging
from typing import Any, Dict, Optional

from scenarios import Scenario

logger = logging.getLogger("runtime.dispatcher")

# ---------------------------------------------------------------------------
# Task registry: lazy-initialised singletons
# ---------------------------------------------------------------------------

_TASK_REGISTRY: Dict[str, Any] = {}


def _get_task(task_key: str, settings=None) -> Any:
    """Return (or build) the singleton for task_key; an explicit settings builds a fresh task."""
    if settings is not None:
        return _build_task(task_key, settings)
    if task_key not in _TASK_REGISTRY:
        _TASK_REGISTRY[task_key] = _build_task(task_key)
    return _TASK_REGISTRY[task_key]


def _build_task(task_key: str, settings=None) -> Any:
    """Instantiate the task class for task_key."""
    from tasks import TASKS

    if task_key not in TASKS:
        raise ValueError(f"Unknown task_key: '{task_key}'")
    return TASKS[task_key](settings=settings)


# ---------------------------------------------------------------------------
# Public execute function
# ---------------------------------------------------------------------------

async def execute_task(
    task_key: str,
    scenario: Scenario,
    overrides: Optional[Dict[str, Any]] = None,
    settings=None,
) -> Dict[str, Any]:
    """
    Call task.process(scenario, overrides) and return a normalised result dict.
    Always returns {"success": bool, "data": ..., "error": str|None, "exit_code": int}.
    """
    task = _get_task(task_key, settings)
    try:
        result = await task.process(scenario, overrides)
        if isinstance(result, dict):
            return result
        return {"success": True, "task": task_key, "scenario": scenario.name, "data": result, "error": None, "exit_code": 0}
    except Exception as exc:
        logger.exception(f"Task '{task_key}' raised an exception: {exc}")
        return {"success": False, "task": task_key, "scenario": scenario.name, "data": None,
                "error": str(exc), "exit_code": 1}


def list_registered_tasks() -> list[str]:
    """Return all valid task_key values."""
    from tasks import TASKS

    return list(TASKS)
