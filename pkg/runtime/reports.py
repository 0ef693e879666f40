"""
Report files for one task response.

report.toml   line-oriented `key = value` records grouped by section (tomli-w)
report.txt    plain-text summary (jinja2)
artifacts     listings, event tables, diagrams and the expanded scenario
"""

from pathlib import Path
from typing import Any, Dict, List, Union
import logging

import aiofiles
import tomli_w

from rendering import render
from scenarios import to_toml_value

logger = logging.getLogger(__name__)

REPORT_FORMATS = ("text", "records")


def _data(response: Dict[str, Any]) -> Dict[str, Any]:
    data = response.get("data")
    return data if isinstance(data, dict) else {}


def report_records(response: Dict[str, Any]) -> Dict[str, Any]:
    """Sectioned record view of a response; artifacts are listed by name only."""
    data = _data(response)
    run = {
        "scenario": response.get("scenario"),
        "task": response.get("task"),
        "success": response.get("success"),
        "exit_code": response.get("exit_code"),
        "error": response.get("error"),
    }
    run.update(response.get("metadata") or {})
    records = {
        "run": run,
        "metrics": data.get("metrics", {}),
        "checks": data.get("checks", {}),
        "failures": {"items": list(data.get("failures", []))},
        "artifacts": {"files": sorted(data.get("artifacts", {}))},
    }
    for section, body in data.get("records", {}).items():
        records[section] = body if isinstance(body, dict) else {"items": body}
    return records


def render_records(response: Dict[str, Any]) -> str:
    return tomli_w.dumps(to_toml_value(report_records(response)))


def render_text(response: Dict[str, Any]) -> str:
    data = _data(response)
    return render(
        "report.txt.j2",
        response=response,
        metadata=list((response.get("metadata") or {}).items()),
        metrics=list(data.get("metrics", {}).items()),
        checks=list(data.get("checks", {}).items()),
        failures=list(data.get("failures", [])),
        artifacts=sorted(data.get("artifacts", {})),
    )


async def _write(path: Path, text: str) -> Path:
    async with aiofiles.open(path, "w", encoding="utf-8") as handle:
        await handle.write(text)
    return path


async def write_outputs(response: Dict[str, Any], out_dir: Union[str, Path], fmt: str = "text") -> List[Path]:
    """
    Write the report in the requested format plus every artifact.

    Returns the written paths in write order.
    """
    if fmt not in REPORT_FORMATS:
        raise ValueError(f"Unknown report format '{fmt}' (known: {', '.join(REPORT_FORMATS)})")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    written = []
    if fmt == "records":
        written.append(await _write(out_dir / "report.toml", render_records(response)))
    else:
        written.append(await _write(out_dir / "report.txt", render_text(response)))
    for name, text in sorted(_data(response).get("artifacts", {}).items()):
        written.append(await _write(out_dir / name, text))
    logger.debug(f"write_outputs | {response.get('scenario')} | {out_dir} | files={len(written)}")
    return written


__all__ = ["REPORT_FORMATS", "report_records", "render_records", "render_text", "write_outputs"]
