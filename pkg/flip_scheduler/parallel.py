"""
Parallel flip schedules over color classes.

Qubits of one color class never couple to each other, so they may share
one level of the recursion: the largest class splits the window at its
qubits' flip times tau_q = tau (1 + s_q) / 2, and every piece replays the
schedule of the smaller classes, alternately forward and time-reversed so
flips at the joins cancel.
"""

from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union
import logging

import networkx as nx
import numpy as np

from errors import ConfigError, ImproperColoringError
from flip_scheduler.models import Coloring, FlipSchedule, check_spins, merge_flips
from flip_scheduler.sequential import plus_fraction
from lattice.connectivity import interaction_graph
from lattice.grouping import Grouping
from lattice.layout import PhysicalLayout

logger = logging.getLogger(__name__)

RawFlips = List[Tuple[Fraction, int]]
SpinProfile = Union[Sequence[float], Mapping[int, float]]


def greedy_coloring(layout: PhysicalLayout, qubits: Optional[Sequence[int]] = None) -> Coloring:
    """Largest-degree-first greedy coloring of the interaction graph."""
    graph = interaction_graph(layout, qubits)
    colors = nx.greedy_color(graph, strategy="largest_first")
    return Coloring.from_assignment(colors)


def check_coloring(layout: PhysicalLayout, coloring: Coloring) -> None:
    """Raise ImproperColoringError on the first coupled same-color pair."""
    for color, members in enumerate(coloring.classes):
        for a, b, _ in layout.coupled_pairs(members):
            raise ImproperColoringError((a, b), color)


def chi_bound(class_sizes: Sequence[int]) -> int:
    """
    Flip-count bound y_kappa for classes of ascending sizes m_1..m_kappa.

    y_1 = 2 m_1,  y_j = 2 m_j + y_{j-1} (m_j + 1) - 2 m_{j-1} ceil(m_j / 2)
    """
    sizes = sorted(int(m) for m in class_sizes if m)
    if not sizes:
        return 0
    y = 2 * sizes[0]
    for previous, m in zip(sizes, sizes[1:]):
        y = 2 * m + y * (m + 1) - 2 * previous * (-(-m // 2))
    return y


def _spin_lookup(spins: SpinProfile, qubits: Sequence[int]) -> Dict[int, float]:
    if isinstance(spins, Mapping):
        missing = [q for q in qubits if q not in spins]
        if missing:
            raise ConfigError(f"No spin given for qubits {missing}")
        lookup = {q: float(spins[q]) for q in qubits}
    else:
        profile = np.asarray(spins, dtype=float)
        if qubits and max(qubits) >= profile.size:
            raise ConfigError(f"Spin profile has {profile.size} entries, qubit {max(qubits)} requested")
        lookup = {q: float(profile[q]) for q in qubits}
    check_spins([lookup[q] for q in qubits])
    return lookup


def _nested_flips(classes: Sequence[Sequence[int]], spins: Mapping[int, float]) -> RawFlips:
    """Raw flips on the unit window for classes[0..] (innermost first)."""
    if not classes:
        return []
    *inner_classes, outer = classes
    inner = _nested_flips(inner_classes, spins)
    flips: RawFlips = []
    switch = {q: plus_fraction(spins[q]) for q in outer}
    for q, at in switch.items():
        flips.append((at, q))
        flips.append((Fraction(1), q))
    bounds = sorted({Fraction(0), Fraction(1), *switch.values()})
    for k, (start, stop) in enumerate(zip(bounds, bounds[1:])):
        span = stop - start
        for at, q in inner:
            local = at if k % 2 == 0 else 1 - at
            flips.append((start + local * span, q))
    return flips


def _schedule_from_classes(
    classes: Sequence[Sequence[int]],
    spins: Mapping[int, float],
    window: float,
    kind: str,
) -> FlipSchedule:
    ordered = sorted((tuple(c) for c in classes if len(c)), key=len)
    qubits = tuple(q for members in ordered for q in members)
    raw = _nested_flips(ordered, spins)
    return FlipSchedule(
        window,
        tuple(merge_flips(raw)),
        tuple(spins[q] for q in qubits),
        qubits,
        kind=kind,
    )


def parallel_schedule(
    layout: PhysicalLayout,
    coloring: Coloring,
    spins: SpinProfile,
    window: float,
) -> FlipSchedule:
    """
    Schedule flipping each color class in parallel.

    spins is indexed by physical qubit. The flip count is at most
    chi_bound(coloring.sizes).
    """
    check_coloring(layout, coloring)
    lookup = _spin_lookup(spins, coloring.qubits)
    schedule = _schedule_from_classes(coloring.classes, lookup, window, kind="parallel")
    logger.debug(
        f"parallel_schedule | classes={list(coloring.sizes)} | chi={schedule.flip_count} | "
        f"bound={chi_bound(coloring.sizes)}"
    )
    return schedule


def grouped_parallel_schedule(grouping: Grouping, spins: SpinProfile, window: float) -> FlipSchedule:
    """
    Schedule with each logical set flipped as one class.

    Only inter-set multipliers are shaped; intra-set phases are left
    unconstrained. A single set has nothing to shape and gets no flips.
    """
    lookup = _spin_lookup(spins, grouping.qubits)
    if grouping.num_sets < 2:
        qubits = grouping.qubits
        return FlipSchedule(window, (), tuple(lookup[q] for q in qubits), qubits, kind="grouped")
    schedule = _schedule_from_classes(grouping.sets, lookup, window, kind="grouped")
    logger.debug(f"grouped_parallel_schedule | sets={grouping.num_sets} | chi={schedule.flip_count}")
    return schedule
