"""
Logical layer: partition of physical qubits into ordered sets.

Slot order inside a set fixes the component order of the logical-subspace
vector s_i and the rows/columns of every interaction matrix F_ij. The
default order is row-major by position: (y, x) in 2D, (z, y, x) in 3D.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple
import logging

import numpy as np

from errors import ConfigError
from lattice.layout import PhysicalLayout

logger = logging.getLogger(__name__)


def row_major_order(layout: PhysicalLayout, qubits: Sequence[int]) -> List[int]:
    """Sort qubits row-major by position (last coordinate slowest)."""
    qubits = list(qubits)
    if not qubits:
        return []
    coords = np.round(layout.positions[qubits], 9)
    order = np.lexsort(coords.T)
    return [qubits[k] for k in order]


@dataclass(frozen=True)
class Grouping:
    """
    Ordered list of N disjoint, ordered qubit-index lists S_1..S_N.

    Set and slot indices are 0-based in the API.
    """
    sets: Tuple[Tuple[int, ...], ...]
    _slots: Dict[int, Tuple[int, int]] = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        sets = tuple(tuple(int(q) for q in members) for members in self.sets)
        if not sets:
            raise ConfigError("Grouping has no sets")
        slots: Dict[int, Tuple[int, int]] = {}
        for i, members in enumerate(sets):
            if not members:
                raise ConfigError(f"Set {i} is empty")
            for k, q in enumerate(members):
                if q < 0:
                    raise ConfigError(f"Negative qubit index {q} in set {i}")
                if q in slots:
                    raise ConfigError(f"Qubit {q} appears in sets {slots[q][0]} and {i}")
                slots[q] = (i, k)
        object.__setattr__(self, "sets", sets)
        object.__setattr__(self, "_slots", slots)

    # ==================== Construction ====================

    @classmethod
    def from_labels(
        cls,
        layout: PhysicalLayout,
        labels: Sequence[Optional[int]],
        keep_order: bool = False,
    ) -> "Grouping":
        """Build from a per-qubit set label (None leaves a qubit ungrouped)."""
        if len(labels) != layout.num_qubits:
            raise ConfigError(f"{len(labels)} labels for {layout.num_qubits} qubits")
        count = 1 + max(lbl for lbl in labels if lbl is not None)
        members: List[List[int]] = [[] for _ in range(count)]
        for q, lbl in enumerate(labels):
            if lbl is not None:
                members[lbl].append(q)
        return cls.from_members(layout, members, keep_order=keep_order)

    @classmethod
    def from_members(
        cls,
        layout: PhysicalLayout,
        members: Iterable[Sequence[int]],
        keep_order: bool = False,
    ) -> "Grouping":
        """Build from qubit lists, sorting slots row-major unless keep_order."""
        sets = [list(m) if keep_order else row_major_order(layout, m) for m in members]
        grouping = cls(tuple(tuple(s) for s in sets))
        grouping.validate_against(layout)
        return grouping

    @classmethod
    def from_positions(
        cls,
        layout: PhysicalLayout,
        position_sets: Iterable[Iterable[Sequence[float]]],
        keep_order: bool = False,
    ) -> "Grouping":
        """Build from per-set position lists."""
        members = [[layout.index_of(p) for p in ps] for ps in position_sets]
        return cls.from_members(layout, members, keep_order=keep_order)

    @classmethod
    def from_blocks(
        cls,
        layout: PhysicalLayout,
        block_width: int,
        block_height: int,
    ) -> "Grouping":
        """Tile a 2D layout into block_width x block_height blocks (row-major blocks)."""
        xs = layout.positions[:, 0]
        ys = layout.positions[:, 1]
        bx = np.floor((xs - xs.min()) / block_width + 1e-9).astype(int)
        by = np.floor((ys - ys.min()) / block_height + 1e-9).astype(int)
        per_row = bx.max() + 1
        labels = (by * per_row + bx).tolist()
        return cls.from_labels(layout, labels)

    # ==================== Accessors ====================

    @property
    def num_sets(self) -> int:
        return len(self.sets)

    @property
    def sizes(self) -> Tuple[int, ...]:
        return tuple(len(s) for s in self.sets)

    @property
    def qubits(self) -> Tuple[int, ...]:
        """Union of all grouped qubits, ascending."""
        return tuple(sorted(self._slots))

    def members(self, i: int) -> Tuple[int, ...]:
        self._check_set(i)
        return self.sets[i]

    def locate(self, qubit: int) -> Tuple[int, int]:
        """Back-map qubit -> (set, slot)."""
        if qubit not in self._slots:
            raise ConfigError(f"Qubit {qubit} is not grouped")
        return self._slots[qubit]

    def set_of(self, qubit: int) -> Optional[int]:
        slot = self._slots.get(qubit)
        return None if slot is None else slot[0]

    def pairs(self) -> List[Tuple[int, int]]:
        """All canonical set pairs (i, j), i < j."""
        n = self.num_sets
        return [(i, j) for i in range(n) for j in range(i + 1, n)]

    def spin_profile(self, vectors: Sequence[Sequence[float]], num_qubits: int) -> np.ndarray:
        """Scatter per-set vectors into a per-qubit spin array (ungrouped qubits get 0)."""
        profile = np.zeros(num_qubits)
        for i, members in enumerate(self.sets):
            vec = np.asarray(vectors[i], dtype=float)
            if vec.shape != (len(members),):
                raise ConfigError(f"Vector for set {i} has shape {vec.shape}, set has {len(members)} slots")
            profile[list(members)] = vec
        return profile

    def validate_against(self, layout: PhysicalLayout) -> None:
        """Check every grouped qubit exists in the layout."""
        m = layout.num_qubits
        bad = [q for q in self._slots if q >= m]
        if bad:
            raise ConfigError(f"Grouping references qubits {bad} outside a {m}-qubit layout")

    def _check_set(self, i: int) -> None:
        if not 0 <= i < self.num_sets:
            raise ConfigError(f"Set index {i} out of range for {self.num_sets} sets")

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary (1-based qubit labels, as in config files)."""
        return {
            "num_sets": self.num_sets,
            "sizes": list(self.sizes),
            "sets": [[q + 1 for q in members] for members in self.sets],
        }
