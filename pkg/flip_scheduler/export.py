"""
Plain-text event table for external pulse tooling.
"""

from flip_scheduler.models import FlipSchedule
from rendering import render


def event_table(schedule: FlipSchedule) -> str:
    """One line per event: time / tau and the 1-based qubits flipped."""
    return render("event_table.txt.j2", schedule=schedule)
