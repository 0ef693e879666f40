"""
Preset expansion: turn a Scenario into explicit library objects.

expand_scenario builds the layout, grouping, target pattern, pinned vectors
and logical circuit (0-based), and returns alongside them the expanded
Scenario whose TOML form names every qubit, set and coupling explicitly.
"""

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Callable, Dict, List, Optional, Tuple
import logging
import math

import numpy as np

from errors import ConfigError, DimensionMismatchError, UnknownPresetError
from lattice import (
    Grouping,
    InteractionMatrix,
    PhysicalLayout,
    all_interaction_matrices,
    build_preset,
    grid_positions,
)
from lattice.presets import cube_vertices
from logical_compiler import (
    GATES,
    LogicalCircuit,
    LogicalCX,
    LogicalEvolve,
    LogicalUnitary,
    LogicalX,
    LogicalZRotation,
    MeasureLogical,
    PrepGHZ,
)
from pattern_solver import TargetPattern
from scenarios.models import (
    GroupingSpec,
    LayoutSpec,
    OperationSpec,
    Scenario,
    TargetSpec,
    VectorsSpec,
)

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]

_SQRT_HALF = 1.0 / math.sqrt(2.0)

MEASUREMENT_BASES = {
    "z": ((1.0, 0.0), (0.0, 1.0)),
    "x": ((_SQRT_HALF, _SQRT_HALF), (_SQRT_HALF, -_SQRT_HALF)),
    "y": ((_SQRT_HALF, 1j * _SQRT_HALF), (_SQRT_HALF, -1j * _SQRT_HALF)),
}


@dataclass
class ResolvedScenario:
    """Expanded scenario plus the 0-based objects the tasks run on."""
    scenario: Scenario
    layout: PhysicalLayout
    grouping: Grouping
    labels: List[str] = field(default_factory=list)
    target: Optional[TargetPattern] = None
    vectors: Optional[List[np.ndarray]] = None
    circuit: Optional[LogicalCircuit] = None

    @cached_property
    def matrices(self) -> Dict[Pair, InteractionMatrix]:
        return all_interaction_matrices(self.layout, self.grouping)

    @property
    def name(self) -> str:
        return self.scenario.name


# ==================== Layout / grouping ====================

def _law(spec: LayoutSpec) -> Dict[str, float]:
    law = {
        "coupling_J": spec.coupling_J,
        "alpha": spec.alpha,
        "cutoff": spec.cutoff_over_delta,
        "spacing_delta": spec.spacing_delta,
    }
    return {k: v for k, v in law.items() if v is not None}


def _explicit_layout(spec: LayoutSpec) -> PhysicalLayout:
    if spec.positions is not None:
        positions = np.array(spec.positions, dtype=float)
    elif spec.width is not None:
        height = spec.width if spec.height is None else spec.height
        positions = grid_positions(spec.width, height, spec.depth)
    else:
        raise ConfigError("layout needs positions or width/height when the grouping has no preset")
    law = {"coupling_J": 1.0, "alpha": 1.0, "cutoff": math.inf, "spacing_delta": 1.0}
    law.update(_law(spec))
    return PhysicalLayout(positions, **law)


def _build_physical(scenario: Scenario) -> Tuple[PhysicalLayout, Grouping, List[str], Dict[str, str]]:
    spec, grouping_spec = scenario.layout, scenario.grouping
    if grouping_spec.preset is not None:
        if spec.positions is not None or spec.width is not None:
            raise ConfigError(f"grouping preset '{grouping_spec.preset}' fixes the lattice; drop the layout geometry")
        preset = build_preset(grouping_spec.preset, **grouping_spec.preset_params, **_law(spec))
        labels = [str(label) for label in preset.labels]
        origin = {"grouping": preset.name}
        if preset.reconstructed:
            origin["geometry"] = "reconstructed"
        return preset.layout, preset.grouping, labels, origin

    layout = _explicit_layout(spec)
    if grouping_spec.sets is None:
        # ungrouped lattice: one set per qubit
        grouping = Grouping(tuple((q,) for q in range(layout.num_qubits)))
        return layout, grouping, list(grouping_spec.labels or []), {}
    members = []
    for k, qubits in enumerate(grouping_spec.sets, start=1):
        bad = [q for q in qubits if not 1 <= q <= layout.num_qubits]
        if bad:
            raise ConfigError(f"Set {k} names qubits {bad} outside 1..{layout.num_qubits}")
        members.append([q - 1 for q in qubits])
    grouping = Grouping.from_members(layout, members, keep_order=True)
    return layout, grouping, list(grouping_spec.labels or []), {}


def _expanded_layout(layout: PhysicalLayout) -> LayoutSpec:
    return LayoutSpec(
        positions=layout.positions.tolist(),
        coupling_J=layout.coupling_J,
        alpha=layout.alpha,
        cutoff_over_delta=layout.cutoff,
        spacing_delta=layout.spacing_delta,
    )


def _expanded_grouping(grouping: Grouping, labels: List[str]) -> GroupingSpec:
    return GroupingSpec(
        sets=[[q + 1 for q in members] for members in grouping.sets],
        labels=list(labels) or None,
    )


# ==================== Topologies ====================

def set_centroids(layout: PhysicalLayout, grouping: Grouping) -> np.ndarray:
    return np.array([layout.positions[list(members)].mean(axis=0) for members in grouping.sets])


def _centroid_shells(layout: PhysicalLayout, grouping: Grouping, shells: Dict[float, float]) -> Dict[Pair, float]:
    """Ratio c for every set pair whose centroid distance is `factor` times the closest one."""
    centres = set_centroids(layout, grouping)
    distances = {(i, j): float(np.linalg.norm(centres[i] - centres[j])) for i, j in grouping.pairs()}
    nearest = min(distances.values())
    ratios = {}
    for pair, d in distances.items():
        for factor, c in shells.items():
            if math.isclose(d, factor * nearest, rel_tol=1e-9):
                ratios[pair] = c
    return ratios


def _cube(num_sets: int, nearest_only: bool) -> Dict[Pair, float]:
    if num_sets != 8:
        raise ConfigError(f"cube topologies need 8 logical qubits, got {num_sets}")
    vertices = cube_vertices()
    ratios = {}
    for i, j in combinations(range(8), 2):
        d = float(np.linalg.norm(vertices[i] - vertices[j]))
        if nearest_only:
            ratios[(i, j)] = 1.0 if math.isclose(d, 1.0) else 0.0
        else:
            ratios[(i, j)] = 1.0 / d
    return ratios


def _coupled(layout: PhysicalLayout, grouping: Grouping) -> Dict[Pair, float]:
    matrices = all_interaction_matrices(layout, grouping)
    return {pair: 1.0 for pair, F in matrices.items() if np.any(F.values != 0)}


TOPOLOGIES: Dict[str, Callable[[PhysicalLayout, Grouping], Dict[Pair, float]]] = {
    "star": lambda layout, grouping: {(0, j): 1.0 for j in range(1, grouping.num_sets)},
    "all": lambda layout, grouping: {pair: 1.0 for pair in grouping.pairs()},
    "coupled": _coupled,
    "centroid-nn": lambda layout, grouping: _centroid_shells(layout, grouping, {1.0: 1.0}),
    "centroid-nn-diag": lambda layout, grouping: _centroid_shells(
        layout, grouping, {1.0: 1.0, math.sqrt(2.0): _SQRT_HALF}
    ),
    "cube": lambda layout, grouping: _cube(grouping.num_sets, nearest_only=False),
    "cube-nn": lambda layout, grouping: _cube(grouping.num_sets, nearest_only=True),
}


def _build_target(
    spec: TargetSpec, layout: PhysicalLayout, grouping: Grouping
) -> Tuple[TargetPattern, TargetSpec, Dict[str, str]]:
    n = grouping.num_sets
    origin = {}
    if spec.topology is not None:
        if spec.topology not in TOPOLOGIES:
            raise UnknownPresetError("topology", spec.topology, TOPOLOGIES)
        partial = TOPOLOGIES[spec.topology](layout, grouping)
        origin["topology"] = spec.topology
    else:
        partial = {}
        for i, j, value in spec.couplings:
            if not (1 <= i <= n and 1 <= j <= n):
                raise ConfigError(f"Coupling ({i}, {j}) out of range for {n} sets")
            if i == j:
                raise ConfigError(f"Coupling ({i}, {j}) couples a set with itself")
            key = (min(i, j) - 1, max(i, j) - 1)
            if key in partial:
                raise ConfigError(f"Coupling ({i}, {j}) listed twice")
            partial[key] = float(value)
    pattern = TargetPattern.complete(n, partial, ratio_form=spec.ratio_form)
    expanded = TargetSpec(
        ratio_form=spec.ratio_form,
        couplings=[(i + 1, j + 1, value) for (i, j), value in pattern.entries.items()],
    )
    return pattern, expanded, origin


# ==================== Vectors ====================

def _build_vectors(spec: VectorsSpec, grouping: Grouping, labels: List[str]) -> List[np.ndarray]:
    if spec.by_label is not None:
        if len(labels) != grouping.num_sets:
            raise ConfigError("vectors by_label need a label for every set")
        missing = sorted(set(labels) - set(spec.by_label))
        if missing:
            raise ConfigError(f"No vector given for labels {missing}")
        rows = [spec.by_label[label] for label in labels]
    else:
        rows = spec.sets
    if len(rows) != grouping.num_sets:
        raise DimensionMismatchError((grouping.num_sets,), (len(rows),), "pinned vector count")
    vectors = []
    for i, row in enumerate(rows):
        vec = np.asarray(row, dtype=float)
        if vec.shape != (len(grouping.members(i)),):
            raise DimensionMismatchError((len(grouping.members(i)),), vec.shape, f"vector of set {i + 1}")
        vectors.append(vec)
    return vectors


# ==================== Circuits ====================

def _required(op: OperationSpec, *names: str) -> None:
    missing = [name for name in names if getattr(op, name) is None]
    if missing:
        raise ConfigError(f"Operation '{op.op}' needs {', '.join(missing)}")


def build_operation(op: OperationSpec):
    """One 1-based OperationSpec as a 0-based logical operation."""
    kind = op.op
    if kind == "prep-ghz":
        _required(op, "set")
        return PrepGHZ(op.set - 1)
    if kind == "gate":
        _required(op, "set", "gate")
        if op.gate not in GATES:
            raise UnknownPresetError("gate", op.gate, GATES)
        return LogicalUnitary(op.set - 1, GATES[op.gate], label=op.gate)
    if kind == "rz":
        _required(op, "set", "angle")
        return LogicalZRotation(op.set - 1, op.angle)
    if kind == "x":
        _required(op, "set")
        return LogicalX(op.set - 1)
    if kind == "cx":
        _required(op, "control", "target")
        return LogicalCX(op.control - 1, op.target - 1)
    if kind == "evolve":
        _required(op, "couplings", "time_over_deltaJ")
        pattern = {(i - 1, j - 1): value for i, j, value in op.couplings}
        return LogicalEvolve(pattern, op.time_over_deltaJ)
    if kind == "measure":
        _required(op, "set", "basis")
        basis = op.basis.lower()
        if basis not in MEASUREMENT_BASES:
            raise UnknownPresetError("measurement basis", op.basis, MEASUREMENT_BASES)
        return MeasureLogical(op.set - 1, MEASUREMENT_BASES[basis], key=op.key or f"m{op.set}")
    raise ConfigError(f"Unknown circuit operation '{kind}'")


def build_circuit(operations: List[OperationSpec], num_sets: int) -> LogicalCircuit:
    return LogicalCircuit(num_sets, [build_operation(op) for op in operations])


# ==================== Entry point ====================

def expand_scenario(scenario: Scenario) -> ResolvedScenario:
    """Expand every preset and build the library objects."""
    layout, grouping, labels, origin = _build_physical(scenario)
    updates = {
        "layout": _expanded_layout(layout),
        "grouping": _expanded_grouping(grouping, labels),
    }

    target = None
    if scenario.target is not None:
        target, updates["target"], target_origin = _build_target(scenario.target, layout, grouping)
        origin.update(target_origin)

    vectors = None
    if scenario.vectors is not None:
        vectors = _build_vectors(scenario.vectors, grouping, labels)
        updates["vectors"] = VectorsSpec(sets=[v.tolist() for v in vectors])
        if scenario.vectors.by_label is not None:
            origin["vectors"] = "by_label"

    circuit = build_circuit(scenario.circuit, grouping.num_sets) if scenario.circuit else None

    merged = dict(scenario.expanded_from)
    merged.update(origin)
    updates["expanded_from"] = dict(sorted(merged.items()))
    expanded = scenario.model_copy(update=updates)
    logger.debug(
        f"expand_scenario | {scenario.name} | qubits={layout.num_qubits} | sets={grouping.num_sets} | "
        f"presets={origin or '-'}"
    )
    return ResolvedScenario(expanded, layout, grouping, labels, target, vectors, circuit)


__all__ = [
    "MEASUREMENT_BASES",
    "ResolvedScenario",
    "TOPOLOGIES",
    "build_circuit",
    "build_operation",
    "expand_scenario",
    "set_centroids",
]
