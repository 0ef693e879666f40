"""
Brute-force schedule oracle.

Each interval between flips adds sum_ij f_ij sigma_i sigma_j z_i z_j dt to
the phase of basis state z; the target is sum_ij f_ij s_i s_j z_i z_j tau.
"""

from enum import Enum
from typing import Optional
import itertools

import numpy as np

from errors import CapacityError, ConfigError
from flip_scheduler.models import FlipSchedule
from lattice.grouping import Grouping
from lattice.layout import PhysicalLayout


class ScheduleScope(str, Enum):
    ALL_PAIRS = "all-pairs"
    INTER_SET = "inter-set-only"


def schedule_multipliers(schedule: FlipSchedule) -> np.ndarray:
    """M_ij = integral of sigma_i sigma_j over the window."""
    durations, signs = schedule.segments()
    return (signs * durations[:, None]).T @ signs


def basis_signs(m: int) -> np.ndarray:
    """All 2^m vectors z in {+1, -1}^m, one per row."""
    return np.array(list(itertools.product((1.0, -1.0), repeat=m))).reshape(1 << m, m)


def verify_schedule(
    layout: PhysicalLayout,
    schedule: FlipSchedule,
    scope: ScheduleScope = ScheduleScope.ALL_PAIRS,
    grouping: Optional[Grouping] = None,
    settings=None,
) -> float:
    """
    Max |phase - target phase| over all computational basis states.

    With scope inter-set-only, pairs inside one set of `grouping` are
    ignored. A grouped schedule checked on all pairs generally fails; the
    large deviation is returned, not raised.
    """
    if settings is None:
        from settings import settings
    scope = ScheduleScope(scope)
    m = schedule.num_qubits
    if m > settings.SCHEDULE_ORACLE_MAX_QUBITS:
        raise CapacityError(m, settings.SCHEDULE_ORACLE_MAX_QUBITS, "schedule oracle")
    if m < 2:
        return 0.0

    qubits = list(schedule.qubits)
    couplings = layout.coupling_matrix[np.ix_(qubits, qubits)]
    spins = np.array(schedule.target_spins)
    deviation = schedule_multipliers(schedule) - np.outer(spins, spins) * schedule.window

    mask = np.triu(np.ones((m, m), dtype=bool), k=1)
    if scope is ScheduleScope.INTER_SET:
        if grouping is None:
            raise ConfigError("inter-set-only scope needs a grouping")
        owners = [grouping.set_of(q) for q in qubits]
        # qubits outside every set count as singleton sets
        sets = np.array([-1 - k if owner is None else owner for k, owner in enumerate(owners)])
        mask &= sets[:, None] != sets[None, :]

    weights = np.where(mask, couplings * deviation, 0.0)
    z = basis_signs(m)
    phases = np.einsum("bi,ij,bj->b", z, weights, z)
    return float(np.max(np.abs(phases)))
