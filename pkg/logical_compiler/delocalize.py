"""
Redistributing set members with SWAP networks.

The qubit in slot k of set i under `from` must end up in slot k of set i
under `to`. Tokens are routed on a spanning tree of each connected
component of the coupling graph: repeatedly pick a leaf, walk the token
destined for it along the tree path, then drop the leaf.
"""

from typing import Dict, List, Tuple
import logging

import networkx as nx

from errors import ConfigError, RoutingError
from lattice.connectivity import interaction_graph
from lattice.grouping import Grouping
from lattice.layout import PhysicalLayout
from logical_compiler.cx import compile_cx
from logical_compiler.program import PulseProgram

logger = logging.getLogger(__name__)

Swap = Tuple[int, int]


def token_destinations(layout: PhysicalLayout, source: Grouping, target: Grouping) -> Dict[int, int]:
    """Physical destination of every qubit's content; ungrouped qubits keep their sorted order."""
    if source.sizes != target.sizes:
        raise ConfigError(f"Groupings have different set sizes: {source.sizes} vs {target.sizes}")
    source.validate_against(layout)
    target.validate_against(layout)
    dest: Dict[int, int] = {}
    for a, b in zip(source.sets, target.sets):
        dest.update(zip(a, b))
    loose_from = [q for q in range(layout.num_qubits) if source.set_of(q) is None]
    loose_to = [q for q in range(layout.num_qubits) if target.set_of(q) is None]
    dest.update(zip(loose_from, loose_to))
    return dest


def _route_tree(tree: nx.Graph, dest: Dict[int, int]) -> List[Swap]:
    """Leaf-elimination token swapping; at most sum of path lengths swaps."""
    tree = tree.copy()
    # position -> original qubit whose content sits there
    holder = {q: q for q in tree.nodes}
    swaps: List[Swap] = []
    while tree.number_of_nodes() > 1:
        leaf = min(v for v in tree.nodes if tree.degree(v) <= 1)
        source = next(p for p, token in holder.items() if dest[token] == leaf and p in tree)
        path = nx.shortest_path(tree, source, leaf)
        for a, b in zip(path, path[1:]):
            holder[a], holder[b] = holder[b], holder[a]
            swaps.append((a, b))
        tree.remove_node(leaf)
    return swaps


def swap_network(layout: PhysicalLayout, dest: Dict[int, int]) -> List[Swap]:
    graph = interaction_graph(layout)
    swaps: List[Swap] = []
    for component in nx.connected_components(graph):
        moved = {dest[q] for q in component}
        if moved != set(component):
            stray = sorted(q + 1 for q in component if dest[q] not in component)
            raise RoutingError(f"Qubits {stray} must leave their coupled component")
        if all(dest[q] == q for q in component):
            continue
        tree = nx.maximum_spanning_tree(graph.subgraph(component), weight="weight")
        swaps.extend(_route_tree(tree, dest))
    return swaps


def compile_swap(layout: PhysicalLayout, a: int, b: int) -> PulseProgram:
    """SWAP = CX(a, b) CX(b, a) CX(a, b)."""
    program = compile_cx(layout, None, a, b) + compile_cx(layout, None, b, a) + compile_cx(layout, None, a, b)
    program.metadata["swap_count"] = 1
    return program


def delocalize_grouping(layout: PhysicalLayout, source: Grouping, target: Grouping) -> PulseProgram:
    """
    Pulse program moving every set from its `source` slots to its `target` slots.

    metadata carries swap_count and cx_count; the identity gives an empty program.
    """
    dest = token_destinations(layout, source, target)
    swaps = swap_network(layout, dest)
    program = PulseProgram(layout.num_qubits, metadata={"swap_count": 0, "cx_count": 0})
    for a, b in swaps:
        program.extend(compile_swap(layout, a, b))
    program.metadata["swaps"] = ";".join(f"{a + 1}-{b + 1}" for a, b in swaps)
    logger.info(
        f"delocalize_grouping | swaps={program.metadata['swap_count']} | time={program.total_time:.6g}"
    )
    return program
