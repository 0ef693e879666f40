"""
Physical layer: qubit positions and the distance-dependent ZZ coupling law.

Positions are stored in units of the lattice spacing delta. The coupling
between two qubits at distance x (in units of delta) is

    f = J * (delta * x) ** (-alpha)    if x <= r
        0                              otherwise

so a nearest-neighbour pair at alpha = 1 couples with J / delta.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Sequence, Tuple
import logging
import math

import numpy as np
from scipy.spatial.distance import cdist

from errors import ConfigError, SelfCouplingError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class PhysicalLayout:
    """
    Qubit geometry plus coupling law (J, alpha, r, delta).

    The full coupling matrix is computed eagerly at construction; the layout
    is immutable afterwards and safe to share between workers.
    """
    positions: np.ndarray
    coupling_J: float = 1.0
    alpha: float = 1.0
    cutoff: float = math.inf
    spacing_delta: float = 1.0
    cutoff_tolerance: float = 1e-9
    _couplings: np.ndarray = field(default=None, init=False, repr=False, compare=False)
    _index: Dict[Tuple[float, ...], int] = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        positions = np.array(self.positions, dtype=float)
        if positions.ndim != 2 or positions.shape[1] not in (1, 2, 3):
            raise ConfigError(f"Positions must be an (m, 1|2|3) array, got shape {positions.shape}")
        if positions.shape[0] == 0:
            raise ConfigError("Layout has no qubits")
        if not self.coupling_J > 0:
            raise ConfigError(f"Coupling constant J must be > 0, got {self.coupling_J}")
        if not self.alpha >= 0:
            raise ConfigError(f"Exponent alpha must be >= 0, got {self.alpha}")
        if not self.cutoff > 0:
            raise ConfigError(f"Cutoff r must be positive, got {self.cutoff}")
        if not self.spacing_delta > 0:
            raise ConfigError(f"Spacing delta must be > 0, got {self.spacing_delta}")

        distances = cdist(positions, positions)
        np.fill_diagonal(distances, np.inf)
        if positions.shape[0] > 1 and distances.min() <= 1e-12:
            a, b = np.unravel_index(np.argmin(distances), distances.shape)
            raise ConfigError(f"Qubits {a} and {b} share position {positions[a].tolist()}")

        within = distances <= self.cutoff + self.cutoff_tolerance
        with np.errstate(divide="ignore"):
            couplings = np.where(
                within, self.coupling_J * (self.spacing_delta * distances) ** (-self.alpha), 0.0
            )
        np.fill_diagonal(couplings, 0.0)
        positions.setflags(write=False)
        couplings.setflags(write=False)

        index = {tuple(np.round(p, 9)): q for q, p in enumerate(positions)}
        object.__setattr__(self, "positions", positions)
        object.__setattr__(self, "_couplings", couplings)
        object.__setattr__(self, "_index", index)

    # ==================== Properties ====================

    @property
    def num_qubits(self) -> int:
        return self.positions.shape[0]

    @property
    def dimension(self) -> int:
        return self.positions.shape[1]

    @property
    def coupling_matrix(self) -> np.ndarray:
        """Symmetric m x m matrix of pairwise couplings, zero diagonal."""
        return self._couplings

    @property
    def nearest_neighbour_coupling(self) -> float:
        """J / delta ** alpha, the coupling at unit distance."""
        return self.coupling_J * self.spacing_delta ** (-self.alpha)

    # ==================== Lookups ====================

    def distance(self, a: int, b: int) -> float:
        """Euclidean distance in units of delta."""
        return float(np.linalg.norm(self.positions[a] - self.positions[b]))

    def index_of(self, position: Sequence[float]) -> int:
        """Qubit index at a position (in units of delta)."""
        key = tuple(np.round(np.asarray(position, dtype=float), 9))
        if key not in self._index:
            raise ConfigError(f"No qubit at position {list(position)}")
        return self._index[key]

    def has_position(self, position: Sequence[float]) -> bool:
        return tuple(np.round(np.asarray(position, dtype=float), 9)) in self._index

    def coupled_pairs(self, qubits: Optional[Sequence[int]] = None):
        """Yield (a, b, f) for a < b with nonzero coupling, restricted to qubits."""
        members = range(self.num_qubits) if qubits is None else sorted(qubits)
        members = list(members)
        for x, a in enumerate(members):
            for b in members[x + 1:]:
                f = self._couplings[a, b]
                if f != 0:
                    yield a, b, float(f)

    def with_law(self, **changes: Any) -> "PhysicalLayout":
        """Copy of this layout with a different coupling law."""
        params = {
            "coupling_J": self.coupling_J,
            "alpha": self.alpha,
            "cutoff": self.cutoff,
            "spacing_delta": self.spacing_delta,
            "cutoff_tolerance": self.cutoff_tolerance,
        }
        params.update(changes)
        return PhysicalLayout(self.positions.copy(), **params)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary."""
        return {
            "positions": self.positions.tolist(),
            "coupling_J": self.coupling_J,
            "alpha": self.alpha,
            "cutoff_over_delta": self.cutoff,
            "spacing_delta": self.spacing_delta,
        }


def coupling_strength(layout: PhysicalLayout, a: int, b: int) -> float:
    """J * f(distance) between qubits a and b; 0 beyond the cutoff."""
    if a == b:
        raise SelfCouplingError(a)
    m = layout.num_qubits
    if not (0 <= a < m and 0 <= b < m):
        raise ConfigError(f"Qubit index out of range: ({a}, {b}) for {m} qubits")
    return float(layout.coupling_matrix[a, b])


def coupling_matrix(layout: PhysicalLayout) -> np.ndarray:
    """Full symmetric coupling matrix of the layout."""
    return np.array(layout.coupling_matrix)


def grid_positions(width: int, height: int, depth: Optional[int] = None) -> np.ndarray:
    """Row-major integer grid coordinates (x fastest)."""
    if depth is None:
        ys, xs = np.mgrid[0:height, 0:width]
        return np.column_stack([xs.ravel(), ys.ravel()]).astype(float)
    zs, ys, xs = np.mgrid[0:depth, 0:height, 0:width]
    return np.column_stack([xs.ravel(), ys.ravel(), zs.ravel()]).astype(float)


def square_layout(width: int, height: Optional[int] = None, **law: Any) -> PhysicalLayout:
    """width x height square lattice with unit spacing."""
    height = width if height is None else height
    return PhysicalLayout(grid_positions(width, height), **law)


def cubic_layout(width: int, height: int, depth: int, **law: Any) -> PhysicalLayout:
    """Three-dimensional cubic lattice."""
    return PhysicalLayout(grid_positions(width, height, depth), **law)
