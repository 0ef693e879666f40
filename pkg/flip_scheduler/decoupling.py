"""
Decoupling schedules from Walsh functions.

Every class gets a distinct nonzero Walsh index w and all its qubits follow
the sign (-1)^popcount(w & n) on the n-th of 2^K equal intervals. Distinct
Walsh functions are orthogonal with zero mean, so couplings between
different classes, and between a class and the static qubits, cancel over
the window while pairs inside one class (and among static qubits) keep
their full strength. Flipping one set at tau/2 is the K = 1 case.
"""

from fractions import Fraction
from typing import Sequence
import logging

from errors import ConfigError
from flip_scheduler.models import FlipSchedule, merge_flips

logger = logging.getLogger(__name__)


def walsh_sign(index: int, interval: int) -> int:
    return -1 if bin(index & interval).count("1") % 2 else 1


def decoupling_schedule(
    window: float,
    classes: Sequence[Sequence[int]],
    static: Sequence[int] = (),
) -> FlipSchedule:
    """
    Schedule cancelling every coupling between different classes.

    static qubits are never flipped and keep their mutual couplings.
    target_spins is 0 for class members and 1 for static qubits.
    """
    classes = [tuple(c) for c in classes if len(c)]
    seen = set(static)
    if len(seen) != len(static):
        raise ConfigError("Static qubits listed twice")
    for members in classes:
        for q in members:
            if q in seen:
                raise ConfigError(f"Qubit {q} appears in two decoupling classes")
            seen.add(q)

    levels = len(classes).bit_length()
    intervals = 1 << levels
    raw = []
    for index, members in enumerate(classes, start=1):
        for n in range(intervals):
            after = walsh_sign(index, n + 1) if n + 1 < intervals else 1
            if walsh_sign(index, n) != after:
                raw.extend((Fraction(n + 1, intervals), q) for q in members)

    qubits = tuple(static) + tuple(q for members in classes for q in members)
    spins = (1.0,) * len(static) + (0.0,) * (len(qubits) - len(static))
    schedule = FlipSchedule(window, tuple(merge_flips(raw)), spins, qubits, kind="decoupling")
    logger.debug(f"decoupling_schedule | classes={len(classes)} | levels={levels} | chi={schedule.flip_count}")
    return schedule
