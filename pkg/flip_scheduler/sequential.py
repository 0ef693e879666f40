"""
Sequential flip schedules.

The recursion O_j(tau) = X_j O~_{j-1}(tau - tau_j) X_j O_{j-1}(tau_j), with
O~ the time-reversed O, unrolls into the reflected Gray code over the 2^m
sign vectors: segment sigma lasts tau * prod_k (1 + sigma_k s_k) / 2 and
consecutive segments differ in exactly one qubit. Averaging over segments
gives E[sigma_i sigma_j] = s_i s_j for every pair.
"""

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple
import logging

from errors import ConfigError
from flip_scheduler.models import FlipSchedule, check_spins, merge_flips

logger = logging.getLogger(__name__)


def plus_fraction(spin: float) -> Fraction:
    """Exact (1 + s) / 2."""
    return (1 + Fraction(float(spin))) / 2


def gray_segments(spins: Sequence[float]) -> List[Tuple[int, Fraction]]:
    """(gray code, fractional duration) for every sign vector, in Gray order."""
    plus = [plus_fraction(s) for s in spins]
    segments = []
    for n in range(1 << len(plus)):
        code = n ^ (n >> 1)
        duration = Fraction(1)
        for k, p in enumerate(plus):
            duration *= (1 - p) if code >> k & 1 else p
        segments.append((code, duration))
    return segments


def sequential_schedule(
    m: int,
    spins: Sequence[float],
    window: float,
    qubits: Optional[Sequence[int]] = None,
) -> FlipSchedule:
    """
    Flip schedule giving every pair the multiplier s_i s_j.

    Qubit 0 is the innermost level of the recursion. Zero-length segments
    are elided and coincident flips of one qubit cancel, so the flip count
    never exceeds 2^m.
    """
    values = check_spins(spins)
    if len(values) != m:
        raise ConfigError(f"sequential_schedule expects {m} spins, got {len(values)}")
    qubits = tuple(range(m)) if qubits is None else tuple(qubits)

    raw = []
    clock = Fraction(0)
    segments = gray_segments(values)
    for (code, duration), (next_code, _) in zip(segments, segments[1:]):
        clock += duration
        raw.append((clock, qubits[(code ^ next_code).bit_length() - 1]))
    if m:
        # the last Gray code has only the top bit set
        raw.append((Fraction(1), qubits[m - 1]))

    schedule = FlipSchedule(window, tuple(merge_flips(raw)), tuple(values), qubits, kind="sequential")
    logger.debug(f"sequential_schedule | m={m} | chi={schedule.flip_count}")
    return schedule
