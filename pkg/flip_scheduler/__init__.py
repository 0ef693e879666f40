"""
Flip scheduler: timed X flips realizing effective spin values.
"""

from flip_scheduler.models import Coloring, FlipEvent, FlipSchedule, check_spins, merge_flips
from flip_scheduler.sequential import gray_segments, sequential_schedule
from flip_scheduler.parallel import (
    check_coloring,
    chi_bound,
    greedy_coloring,
    grouped_parallel_schedule,
    parallel_schedule,
)
from flip_scheduler.verify import ScheduleScope, basis_signs, schedule_multipliers, verify_schedule
from flip_scheduler.export import event_table
from flip_scheduler.decoupling import decoupling_schedule, walsh_sign

__all__ = [
    "Coloring",
    "FlipEvent",
    "FlipSchedule",
    "check_spins",
    "merge_flips",
    "gray_segments",
    "sequential_schedule",
    "check_coloring",
    "chi_bound",
    "greedy_coloring",
    "grouped_parallel_schedule",
    "parallel_schedule",
    "ScheduleScope",
    "basis_signs",
    "schedule_multipliers",
    "verify_schedule",
    "event_table",
    "decoupling_schedule",
    "walsh_sign",
]
