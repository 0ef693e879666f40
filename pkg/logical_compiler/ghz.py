"""
GHZ preparation and the encoding tree of a logical set.

Encoding is a spanning tree of the set's interaction graph rooted at the
slot holding the logical information; applying its CX layers maps
(a|0> + b|1>)|0...0> to a|0...0> + b|1...1>. Decoding runs the same layers
in reverse order (each layer is a product of commuting CX gates).
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple
import logging

import networkx as nx

from errors import ConfigError, DisconnectedSetError
from lattice.connectivity import classify_set
from lattice.grouping import Grouping
from lattice.layout import PhysicalLayout
from logical_compiler.layers import CXLayer, greedy_layers, layer_steps
from logical_compiler.program import PulseProgram, SingleQubitGate, Step

logger = logging.getLogger(__name__)

SlotEdge = Tuple[int, int]


@dataclass(frozen=True)
class EncodingPlan:
    """Root qubit plus the CX layers of one set (physical qubit indices)."""
    set_index: int
    root: int
    layers: Tuple[CXLayer, ...]

    @property
    def duration(self) -> float:
        return sum(layer.duration for layer in self.layers)

    def encode_steps(self, layout: PhysicalLayout) -> List[Step]:
        steps: List[Step] = []
        for k, layer in enumerate(self.layers):
            steps.extend(layer_steps(layout, layer, label=f"encode set {self.set_index + 1} layer {k + 1}"))
        return steps

    def decode_steps(self, layout: PhysicalLayout) -> List[Step]:
        steps: List[Step] = []
        for k, layer in reversed(list(enumerate(self.layers))):
            steps.extend(layer_steps(layout, layer, label=f"decode set {self.set_index + 1} layer {k + 1}"))
        return steps


def default_cx_tree(layout: PhysicalLayout, grouping: Grouping, i: int) -> List[SlotEdge]:
    """BFS tree from the lowest-slot centre of the set's interaction graph."""
    connectivity = classify_set(layout, grouping, i)
    if not connectivity.is_connected:
        raise DisconnectedSetError(i)
    graph = connectivity.graph
    if graph.number_of_nodes() == 1:
        return []
    root = min(nx.center(graph))
    return list(nx.bfs_edges(graph, root))


def _check_tree(size: int, tree: Sequence[SlotEdge]) -> int:
    if len(tree) != size - 1:
        raise ConfigError(f"CX tree has {len(tree)} edges, a set of {size} needs {size - 1}")
    if not tree:
        return 0
    root = tree[0][0]
    prepared = {root}
    for c, t in tree:
        if not (0 <= c < size and 0 <= t < size):
            raise ConfigError(f"CX tree edge ({c}, {t}) outside a set of {size}")
        if c not in prepared:
            raise ConfigError(f"CX tree control {c} is used before it is prepared")
        if t in prepared:
            raise ConfigError(f"CX tree target {t} is prepared twice")
        prepared.add(t)
    return root


def encoding_plan(
    layout: PhysicalLayout,
    grouping: Grouping,
    i: int,
    cx_tree: Optional[Sequence[SlotEdge]] = None,
) -> EncodingPlan:
    """Layered encoding of set i; cx_tree lists (control, target) slot pairs."""
    connectivity = classify_set(layout, grouping, i)
    if not connectivity.is_connected:
        raise DisconnectedSetError(i)
    members = grouping.members(i)
    tree = default_cx_tree(layout, grouping, i) if cx_tree is None else [tuple(e) for e in cx_tree]
    root_slot = _check_tree(len(members), tree)
    edges = [(members[c], members[t]) for c, t in tree]
    layers = greedy_layers(layout, members[root_slot], edges)
    return EncodingPlan(i, members[root_slot], tuple(layers))


def compile_ghz_prep(
    layout: PhysicalLayout,
    grouping: Grouping,
    i: int,
    cx_tree: Optional[Sequence[SlotEdge]] = None,
) -> PulseProgram:
    """
    H on the root then the encoding layers.

    From all qubits at Z = +1 this yields (|0...0> + |1...1>)/sqrt(2) on
    set i. A single-qubit set costs no evolution time.
    """
    plan = encoding_plan(layout, grouping, i, cx_tree)
    steps: List[Step] = [SingleQubitGate(plan.root, "H")]
    steps.extend(plan.encode_steps(layout))
    program = PulseProgram(layout.num_qubits, steps)
    program.metadata.update({"layers": len(plan.layers), "cx_count": sum(len(l.edges) for l in plan.layers)})
    logger.info(
        f"compile_ghz_prep | set={i + 1} | layers={len(plan.layers)} | time={program.total_time:.6g}"
    )
    return program
