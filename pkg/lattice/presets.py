"""
Named layout + grouping presets for the bundled scenarios.

Each preset returns a PresetLayout: the physical layout, its grouping, an
optional per-set label (A/B for the periodic lattices) and whether the
geometry is a reconstruction rather than an exactly specified assignment.
"""

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple
import logging
import math

import numpy as np

from errors import UnknownPresetError
from lattice.grouping import Grouping
from lattice.layout import PhysicalLayout, grid_positions, square_layout

logger = logging.getLogger(__name__)

# 4x4 Latin-square colouring: four n.n. bonds between every pair of sets
LATIN_4X4 = (
    (0, 1, 2, 3),
    (2, 3, 0, 1),
    (1, 0, 3, 2),
    (3, 2, 1, 0),
)


@dataclass
class PresetLayout:
    """A ready-to-use layout/grouping pair."""
    name: str
    layout: PhysicalLayout
    grouping: Grouping
    labels: List[str] = field(default_factory=list)
    reconstructed: bool = False
    description: str = ""
    block_anchors: List[Tuple[float, float]] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "num_qubits": self.layout.num_qubits,
            "num_sets": self.grouping.num_sets,
            "labels": list(self.labels),
            "reconstructed": self.reconstructed,
            "description": self.description,
        }


def _law(defaults: Dict[str, Any], overrides: Dict[str, Any]) -> Dict[str, Any]:
    law = dict(defaults)
    law.update({k: v for k, v in overrides.items() if v is not None})
    return law


# ==================== 4x4 toy groupings ====================

def g1(**law: Any) -> PresetLayout:
    """Four 2x2 corner blocks of a 4x4 lattice, full range."""
    layout = square_layout(4, 4, **_law({"cutoff": math.inf}, law))
    return PresetLayout("G1", layout, Grouping.from_blocks(layout, 2, 2),
                        description="4x4 lattice, 2x2 corner blocks")


def g2(**law: Any) -> PresetLayout:
    """Spread grouping: set = (x mod 2) + 2 (y mod 2)."""
    layout = square_layout(4, 4, **_law({"cutoff": math.inf}, law))
    labels = [int(x) % 2 + 2 * (int(y) % 2) for x, y in layout.positions]
    return PresetLayout("G2", layout, Grouping.from_labels(layout, labels), reconstructed=True,
                        description="4x4 lattice, sets spread by coordinate parity")


# ==================== Blocked lattices ====================

def fig5_cube(**law: Any) -> PresetLayout:
    """8x8 lattice in eight 4x2 blocks; block (bx, by) plays cube vertex (bx, by % 2, by // 2)."""
    layout = square_layout(8, 8, **_law({"cutoff": math.inf}, law))
    grouping = Grouping.from_blocks(layout, 4, 2)
    return PresetLayout("fig5-cube", layout, grouping, reconstructed=True,
                        description="8x8 lattice, eight 4x2 blocks arranged as a cube")


def cube_vertices() -> np.ndarray:
    """Cube coordinates of the fig5-cube sets, in set order."""
    return np.array([(bx, by % 2, by // 2) for by in range(4) for bx in range(2)], dtype=float)


def fig5_nn9(**law: Any) -> PresetLayout:
    """9x9 lattice in nine 3x3 blocks forming a 3x3 logical grid."""
    layout = square_layout(9, 9, **_law({"cutoff": math.inf}, law))
    return PresetLayout("fig5-nn9", layout, Grouping.from_blocks(layout, 3, 3), reconstructed=True,
                        description="9x9 lattice, nine 3x3 blocks")


def fig6a(block_cols: int = 3, block_rows: int = 2, **law: Any) -> PresetLayout:
    """Checkerboard of 2x2 blocks (A where bx + by is even), n.n. couplings."""
    layout = square_layout(2 * block_cols, 2 * block_rows, **_law({"cutoff": 1.0}, law))
    grouping = Grouping.from_blocks(layout, 2, 2)
    labels = ["A" if (bx + by) % 2 == 0 else "B" for by in range(block_rows) for bx in range(block_cols)]
    anchors = [(2.0 * bx, 2.0 * by) for by in range(block_rows) for bx in range(block_cols)]
    return PresetLayout("fig6a", layout, grouping, labels=labels, reconstructed=True,
                        description="hexagonal brick wall from 2x2 blocks", block_anchors=anchors)


def fig6b(block_cols: int = 2, block_rows: int = 3, **law: Any) -> PresetLayout:
    """
    Brick layout of 4-wide, 2-tall blocks; odd block rows shift right by 2.

    Block rows alternate A, B, A, ... Slots 0..3 are the bottom row and
    4..7 the top row of each block.
    """
    positions = []
    members = []
    labels = []
    anchors = []
    for by in range(block_rows):
        x_offset = 2 * (by % 2)
        for bx in range(block_cols):
            x0 = x_offset + 4 * bx
            y0 = 2 * by
            block = [(x0 + dx, y0 + dy) for dy in range(2) for dx in range(4)]
            members.append(list(range(len(positions), len(positions) + 8)))
            positions.extend(block)
            labels.append("A" if by % 2 == 0 else "B")
            anchors.append((float(x0), float(y0)))
    layout = PhysicalLayout(np.array(positions, dtype=float), **_law({"cutoff": 1.0}, law))
    grouping = Grouping.from_members(layout, members)
    return PresetLayout("fig6b", layout, grouping, labels=labels, reconstructed=True,
                        description="triangular pattern from a brick wall of 4x2 blocks",
                        block_anchors=anchors)


def _latin_labels(layout: PhysicalLayout, table: Sequence[Sequence[int]]) -> List[int]:
    return [int(table[int(y)][int(x)]) for x, y in layout.positions]


def fig8a(**law: Any) -> PresetLayout:
    """4x4 n.n. lattice, Latin-square grouping: 4 bonds between every pair."""
    layout = square_layout(4, 4, **_law({"cutoff": 1.0}, law))
    grouping = Grouping.from_labels(layout, _latin_labels(layout, LATIN_4X4))
    return PresetLayout("fig8a", layout, grouping, reconstructed=True,
                        description="4x4 n.n. lattice, four fully connected sets")


def fig8b(**law: Any) -> PresetLayout:
    """5x5 n.n. lattice, set = (x + 2y) mod 5: 4 bonds between every pair."""
    layout = square_layout(5, 5, **_law({"cutoff": 1.0}, law))
    labels = [(int(x) + 2 * int(y)) % 5 for x, y in layout.positions]
    return PresetLayout("fig8b", layout, Grouping.from_labels(layout, labels), reconstructed=True,
                        description="5x5 n.n. lattice, five fully connected sets")


def fig8c(**law: Any) -> PresetLayout:
    """fig8a grouping on a lattice with n.n. and diagonal couplings."""
    preset = fig8a(**_law({"cutoff": math.sqrt(2.0)}, law))
    preset.name = "fig8c"
    preset.description = "4x4 n.n.+diagonal lattice, Latin-square grouping"
    return preset


def sublattice_chain(blocks: Sequence[Sequence[int]], num_sets: int, **law: Any) -> PresetLayout:
    """
    4 x (5a - 1) n.n. lattice: a Latin-square 4x4 sublattice per block,
    separated by single columns whose qubits join their left neighbour's set.
    """
    a = len(blocks)
    width = 4 * a + (a - 1)
    layout = PhysicalLayout(grid_positions(width, 4), **_law({"cutoff": 1.0}, law))
    labels: List[int] = [None] * layout.num_qubits
    for q, (x, y) in enumerate(layout.positions):
        x, y = int(x), int(y)
        block, local_x = divmod(x, 5)
        if local_x == 4:
            local_x = 3
        labels[q] = int(blocks[block][LATIN_4X4[y][local_x]])
    members = [[q for q, lbl in enumerate(labels) if lbl == i] for i in range(num_sets)]
    grouping = Grouping.from_members(layout, members)
    return PresetLayout(f"appD-N{num_sets}", layout, grouping,
                        description=f"{a} Latin-square sublattices for {num_sets} sets")


def appd_n8(**law: Any) -> PresetLayout:
    """Polynomial-scaling construction for N = 8 (116 qubits)."""
    from cost_model.scaling import polynomial_scaling_construction

    construction = polynomial_scaling_construction(8)
    return sublattice_chain(construction.blocks, 8, **law)


GROUPING_PRESETS: Dict[str, Callable[..., PresetLayout]] = {
    "G1": g1,
    "G2": g2,
    "fig5-cube": fig5_cube,
    "fig5-nn9": fig5_nn9,
    "fig6a": fig6a,
    "fig6b": fig6b,
    "fig8a": fig8a,
    "fig8b": fig8b,
    "fig8c": fig8c,
    "appD-N8": appd_n8,
}


def build_preset(name: str, **params: Any) -> PresetLayout:
    """Build a named preset; unknown names raise UnknownPresetError."""
    if name not in GROUPING_PRESETS:
        raise UnknownPresetError("grouping", name, GROUPING_PRESETS)
    preset = GROUPING_PRESETS[name](**params)
    logger.debug(f"Preset {name} | qubits={preset.layout.num_qubits} | sets={preset.grouping.num_sets}")
    return preset


def list_presets() -> List[str]:
    return sorted(GROUPING_PRESETS)
