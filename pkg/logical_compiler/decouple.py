"""
Decoupling windows.
"""

from typing import Iterable, Optional
import logging

from errors import ConfigError
from flip_scheduler.decoupling import decoupling_schedule
from lattice.grouping import Grouping
from logical_compiler.program import Evolve, PulseProgram

logger = logging.getLogger(__name__)


def compile_decouple(
    grouping: Grouping,
    subset: Iterable[int],
    tau: float,
    num_qubits: Optional[int] = None,
) -> PulseProgram:
    """
    Free evolution for tau with the chosen sets cut off.

    Each chosen set follows its own Walsh sign pattern (one set alone
    flips at tau/2), so its couplings to every other qubit cancel while
    its intra-set couplings and the couplings among the remaining qubits
    evolve untouched.
    """
    if not tau > 0:
        raise ConfigError(f"Decoupling window must be positive, got {tau}")
    chosen = sorted(set(subset))
    for i in chosen:
        grouping.members(i)
    m = max(grouping.qubits) + 1 if num_qubits is None else num_qubits
    cut = {q for i in chosen for q in grouping.members(i)}
    profile = tuple(0.0 if q in cut else 1.0 for q in range(m))
    if not chosen:
        return PulseProgram(m, [Evolve(tau, profile, label="free evolution")])
    static = [q for q in range(m) if q not in cut]
    schedule = decoupling_schedule(tau, [grouping.members(i) for i in chosen], static)
    labels = ",".join(str(i + 1) for i in chosen)
    logger.debug(f"compile_decouple | sets={labels} | flips={schedule.flip_count}")
    return PulseProgram(m, [Evolve(tau, profile, schedule, label=f"decouple sets {labels}")])
