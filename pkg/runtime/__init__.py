"""
Runtime: task dispatch and report output.
"""

from runtime.dispatcher import execute_task, list_registered_tasks
from runtime.reports import REPORT_FORMATS, render_records, render_text, report_records, write_outputs

__all__ = [
    "execute_task",
    "list_registered_tasks",
    "REPORT_FORMATS",
    "render_records",
    "render_text",
    "report_records",
    "write_outputs",
]
