"""
Flip schedules and colorings.

Flips are idealized as instantaneous X gates. Event times are kept as
exact fractions u of the window, t = u * tau, and converted to float
only when a schedule is simulated or exported.
"""

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from errors import ConfigError, SpinRangeError


def check_spins(spins: Sequence[float]) -> np.ndarray:
    values = np.asarray(spins, dtype=float)
    for index, value in enumerate(values):
        if not np.isfinite(value) or abs(value) > 1.0:
            raise SpinRangeError(index, float(value))
    return values


@dataclass(frozen=True)
class FlipEvent:
    """Simultaneous X flips at fraction `at` of the window."""
    at: Fraction
    qubits: Tuple[int, ...]

    def time(self, window: float) -> float:
        return float(self.at) * window

    def to_dict(self, window: float) -> Dict[str, Any]:
        return {"time": self.time(window), "fraction": str(self.at), "qubits": [q + 1 for q in self.qubits]}


def merge_flips(raw: Iterable[Tuple[Fraction, int]]) -> List[FlipEvent]:
    """
    Collapse raw (fraction, qubit) flips into events.

    Flips at one instant merge into a single event and pairs of flips of
    the same qubit at that instant cancel.
    """
    parity: Dict[Fraction, Dict[int, int]] = defaultdict(lambda: defaultdict(int))
    for at, qubit in raw:
        parity[at][qubit] ^= 1
    events = []
    for at in sorted(parity):
        flipped = tuple(sorted(q for q, odd in parity[at].items() if odd))
        if flipped:
            events.append(FlipEvent(at, flipped))
    return events


@dataclass(frozen=True)
class FlipSchedule:
    """
    Timed X flips realizing effective spins over a window tau.

    `qubits` lists the physical qubits the schedule drives, in the order of
    `target_spins`. Every driven qubit starts and ends unflipped.
    """
    window: float
    events: Tuple[FlipEvent, ...]
    target_spins: Tuple[float, ...]
    qubits: Tuple[int, ...] = ()
    kind: str = "sequential"

    def __post_init__(self):
        if not self.window > 0:
            raise ConfigError(f"Schedule window must be positive, got {self.window}")
        object.__setattr__(self, "events", tuple(self.events))
        object.__setattr__(self, "target_spins", tuple(float(s) for s in self.target_spins))
        if not self.qubits:
            object.__setattr__(self, "qubits", tuple(range(len(self.target_spins))))
        if len(self.qubits) != len(self.target_spins):
            raise ConfigError(f"{len(self.qubits)} qubits for {len(self.target_spins)} spins")
        previous = None
        for event in self.events:
            if not 0 <= event.at <= 1:
                raise ConfigError(f"Flip at fraction {event.at} lies outside the window")
            if previous is not None and event.at <= previous:
                raise ConfigError("Flip events must be strictly increasing in time")
            previous = event.at

    @property
    def flip_count(self) -> int:
        """Total single-qubit X applications (chi)."""
        return sum(len(e.qubits) for e in self.events)

    @property
    def num_qubits(self) -> int:
        return len(self.qubits)

    def segments(self) -> Tuple[np.ndarray, np.ndarray]:
        """
        Piecewise-constant sign profile.

        Returns (durations, signs): durations[k] is the length of interval k
        and signs[k] the +-1 sign of every driven qubit during it.
        """
        position = {q: k for k, q in enumerate(self.qubits)}
        sign = np.ones(self.num_qubits)
        durations, signs = [], []
        last = Fraction(0)
        for event in self.events:
            if event.at > last:
                durations.append(float(event.at - last) * self.window)
                signs.append(sign.copy())
            for q in event.qubits:
                sign[position[q]] *= -1
            last = event.at
        if last < 1:
            durations.append(float(1 - last) * self.window)
            signs.append(sign.copy())
        if np.any(sign < 0):
            raise ConfigError("Schedule leaves qubits flipped at the end of the window")
        return np.array(durations), np.array(signs).reshape(len(durations), self.num_qubits)

    def reversed(self) -> "FlipSchedule":
        """Time-reversed schedule over the same window."""
        events = tuple(FlipEvent(1 - e.at, e.qubits) for e in reversed(self.events))
        return FlipSchedule(self.window, events, self.target_spins, self.qubits, kind=f"{self.kind}-reversed")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "window": self.window,
            "flip_count": self.flip_count,
            "qubits": [q + 1 for q in self.qubits],
            "target_spins": list(self.target_spins),
            "events": [e.to_dict(self.window) for e in self.events],
        }


@dataclass(frozen=True)
class Coloring:
    """
    Proper coloring of the driven qubits.

    classes are ordered by ascending size (m_1 <= ... <= m_kappa).
    """
    classes: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        classes = tuple(tuple(c) for c in self.classes if len(c))
        seen = set()
        for members in classes:
            for q in members:
                if q in seen:
                    raise ConfigError(f"Qubit {q} has two colors")
                seen.add(q)
        object.__setattr__(self, "classes", tuple(sorted(classes, key=len)))

    @classmethod
    def from_assignment(cls, colors: Mapping[int, int]) -> "Coloring":
        grouped: Dict[int, List[int]] = defaultdict(list)
        for q, color in sorted(colors.items()):
            grouped[color].append(q)
        return cls(tuple(tuple(members) for _, members in sorted(grouped.items())))

    @property
    def sizes(self) -> Tuple[int, ...]:
        return tuple(len(c) for c in self.classes)

    @property
    def qubits(self) -> Tuple[int, ...]:
        return tuple(q for members in self.classes for q in members)

    def color_of(self, qubit: int) -> int:
        for color, members in enumerate(self.classes):
            if qubit in members:
                return color
        raise ConfigError(f"Qubit {qubit} is not colored")

    def to_dict(self) -> Dict[str, Any]:
        return {"classes": [[q + 1 for q in c] for c in self.classes], "sizes": list(self.sizes)}
