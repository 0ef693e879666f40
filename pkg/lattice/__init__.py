"""
Physical layer: layouts, groupings, interaction matrices and connectivity.
"""

from lattice.layout import (
    PhysicalLayout,
    coupling_strength,
    coupling_matrix,
    grid_positions,
    square_layout,
    cubic_layout,
)
from lattice.grouping import Grouping, row_major_order
from lattice.interaction import (
    InteractionMatrix,
    interaction_matrix,
    all_interaction_matrices,
    effective_coupling,
    effective_pattern,
)
from lattice.connectivity import (
    ConnectivityKind,
    ConnectivityClass,
    classify_set,
    interaction_graph,
    set_interaction_graph,
)
from lattice.presets import PresetLayout, build_preset, list_presets, GROUPING_PRESETS

__all__ = [
    "PhysicalLayout",
    "coupling_strength",
    "coupling_matrix",
    "grid_positions",
    "square_layout",
    "cubic_layout",
    "Grouping",
    "row_major_order",
    "InteractionMatrix",
    "interaction_matrix",
    "all_interaction_matrices",
    "effective_coupling",
    "effective_pattern",
    "ConnectivityKind",
    "ConnectivityClass",
    "classify_set",
    "interaction_graph",
    "set_interaction_graph",
    "PresetLayout",
    "build_preset",
    "list_presets",
    "GROUPING_PRESETS",
]
