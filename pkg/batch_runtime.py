"""
LatticeIQ Batch Runtime
=======================
Runs every fixture of a library directory through the task named by its
scenario command. Fixtures run concurrently, each with its own seed and
output directory, bounded by RUN_ALL_CONCURRENCY and TASK_TIMEOUT_SECONDS.

Run:
    python batch_runtime.py [fixtures-dir] [out-dir]
"""

from __future__ import annotations

import asyncio
import logging
import sys
import time
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from config import EXIT_CONFIG_ERROR, EXIT_OK, EXIT_VERIFICATION_FAILURE
from errors import LatticeIQError
from rendering import render
from runtime.dispatcher import execute_task
from runtime.reports import write_outputs
from scenarios import list_fixtures, load_scenario

logger = logging.getLogger("runtime.batch")


# ---------------------------------------------------------------------------
# One fixture
# ---------------------------------------------------------------------------

async def run_fixture(
    path: Path,
    out_root: Path,
    semaphore: asyncio.Semaphore,
    overrides: Dict[str, Any],
    fmt: str,
    settings,
) -> Dict[str, Any]:
    """Load, execute and report one fixture; never raises."""
    started = time.monotonic()
    async with semaphore:
        try:
            scenario = load_scenario(path)
        except LatticeIQError as exc:
            logger.error(f"{path.name} | load failed | {exc}")
            return {"success": False, "scenario": path.stem, "task": "-", "tier": "-",
                    "exit_code": exc.exit_code, "error": str(exc), "seconds": time.monotonic() - started}

        task_key = scenario.command.value
        try:
            response = await asyncio.wait_for(
                execute_task(task_key, scenario, overrides, settings=settings),
                timeout=settings.TASK_TIMEOUT_SECONDS,
            )
        except asyncio.TimeoutError:
            logger.error(f"{scenario.name} | timed out after {settings.TASK_TIMEOUT_SECONDS}s")
            response = {"success": False, "scenario": scenario.name, "task": task_key, "data": None,
                        "error": f"timed out after {settings.TASK_TIMEOUT_SECONDS}s",
                        "exit_code": EXIT_VERIFICATION_FAILURE}

        try:
            await write_outputs(response, out_root / scenario.name, fmt)
        except Exception as exc:
            logger.exception(f"{scenario.name} | report write failed: {exc}")

    status = "ok" if response.get("success") else "FAILED"
    logger.info(f"{scenario.name} | {task_key} | {status} | exit={response.get('exit_code')}")
    return {
        "success": bool(response.get("success")),
        "scenario": scenario.name,
        "task": task_key,
        "tier": scenario.tier.value,
        "exit_code": int(response.get("exit_code", 1)),
        "error": response.get("error"),
        "seconds": time.monotonic() - started,
    }


# ---------------------------------------------------------------------------
# Whole library
# ---------------------------------------------------------------------------

async def run_all(
    fixtures_dir: Optional[Union[str, Path]] = None,
    out_dir: Optional[Union[str, Path]] = None,
    overrides: Optional[Dict[str, Any]] = None,
    fmt: str = "text",
    settings=None,
) -> Dict[str, Any]:
    """
    Execute every fixture and write a summary.

    Returns {"exit_code": worst exit code, "results": [...], "summary": text}.
    """
    if settings is None:
        from settings import settings
    overrides = dict(overrides or {})
    # each fixture keeps its own seed unless --seed pins them all
    paths = list_fixtures(fixtures_dir, settings=settings)
    out_root = Path(out_dir) if out_dir is not None else settings.output_path
    out_root.mkdir(parents=True, exist_ok=True)
    if not paths:
        logger.warning(f"run-all | no fixtures found")
        return {"exit_code": EXIT_CONFIG_ERROR, "results": [], "summary": ""}

    semaphore = asyncio.Semaphore(settings.RUN_ALL_CONCURRENCY)
    logger.info(f"run-all | fixtures={len(paths)} | concurrency={settings.RUN_ALL_CONCURRENCY}")
    results: List[Dict[str, Any]] = await asyncio.gather(
        *(run_fixture(path, out_root, semaphore, overrides, fmt, settings) for path in paths)
    )

    worst = max((r["exit_code"] for r in results), default=EXIT_OK)
    rows = [dict(r, status="ok" if r["success"] else "FAILED") for r in results]
    summary = render("runall_summary.txt.j2", rows=rows, worst=worst)
    (out_root / "summary.txt").write_text(summary, encoding="utf-8")
    failed = [r["scenario"] for r in results if not r["success"]]
    logger.info(f"run-all | done | failed={len(failed)} | worst_exit={worst}")
    return {"exit_code": worst, "results": results, "summary": summary}


if __name__ == "__main__":
    logging.basicConfig(
        level=logging.INFO,
        format="%(asctime)s [%(levelname)s] %(name)s - %(message)s",
        handlers=[logging.StreamHandler(sys.stdout)],
    )
    args = sys.argv[1:]
    outcome = asyncio.run(run_all(args[0] if args else None, args[1] if len(args) > 1 else None))
    sys.exit(outcome["exit_code"])
