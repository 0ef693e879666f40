"""
Human-readable step table of a pulse program.
"""

from typing import Any, Dict, List, Sequence

from logical_compiler.program import Conditional, Evolve, MeasureZ, PulseProgram, SingleQubitGate, Step
from rendering import render


def _detail(step: Step) -> str:
    if isinstance(step, Evolve):
        flips = 0 if step.schedule is None else step.schedule.flip_count
        active = sum(1 for s in step.profile if s != 0)
        return f"{step.label or 'evolve'} | active={active} | flips={flips}"
    if isinstance(step, SingleQubitGate):
        angle = "" if step.angle is None else f"({step.angle:.6f})"
        return f"{step.name}{angle} on q{step.qubit + 1}"
    if isinstance(step, MeasureZ):
        return f"Z on q{step.qubit + 1} -> {step.key}"
    return f"on {step.key}"


def _rows(steps: Sequence[Step], depth: int, prefix: str, rows: List[Dict[str, Any]]) -> None:
    for k, step in enumerate(steps, start=1):
        index = f"{prefix}{k}"
        kind = {Evolve: "evolve", SingleQubitGate: "gate", MeasureZ: "measure", Conditional: "branch"}[type(step)]
        duration = f"{step.duration:.6f}" if isinstance(step, Evolve) else "-"
        rows.append({"index": index, "indent": "  " * depth, "kind": kind, "duration": duration, "detail": _detail(step)})
        if isinstance(step, Conditional):
            for outcome, branch in sorted(step.branches.items()):
                rows.append({
                    "index": "", "indent": "  " * (depth + 1), "kind": f"[{step.key}={outcome}]",
                    "duration": "", "detail": f"{len(branch)} steps",
                })
                _rows(branch, depth + 2, f"{index}.{outcome}.", rows)


def program_listing(program: PulseProgram) -> str:
    """Step table with durations in units of delta/J; branches are indented."""
    rows: List[Dict[str, Any]] = []
    _rows(program.steps, 0, "", rows)
    return render("program_listing.txt.j2", program=program, rows=rows)
