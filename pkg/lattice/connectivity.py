"""
Connectivity classes of logical sets, from the intra-set interaction graph.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Optional, Sequence

import networkx as nx

from lattice.grouping import Grouping
from lattice.layout import PhysicalLayout


class ConnectivityKind(str, Enum):
    """How the qubits of a set are coupled among themselves."""
    FULLY_CONNECTED = "FullyConnected"
    CONNECTED = "Connected"
    DISCONNECTED = "Disconnected"


@dataclass(frozen=True, eq=False)
class ConnectivityClass:
    """Classification of one set plus its interaction graph (vertices = slots)."""
    set_index: int
    kind: ConnectivityKind
    graph: nx.Graph

    @property
    def is_connected(self) -> bool:
        return self.kind != ConnectivityKind.DISCONNECTED

    def to_dict(self) -> Dict[str, Any]:
        return {
            "set": self.set_index + 1,
            "kind": self.kind.value,
            "edges": self.graph.number_of_edges(),
        }


def interaction_graph(layout: PhysicalLayout, qubits: Optional[Sequence[int]] = None) -> nx.Graph:
    """Weighted coupling graph over qubit indices (all qubits by default)."""
    members = range(layout.num_qubits) if qubits is None else qubits
    graph = nx.Graph()
    graph.add_nodes_from(members)
    for a, b, f in layout.coupled_pairs(members):
        graph.add_edge(a, b, weight=f)
    return graph


def set_interaction_graph(layout: PhysicalLayout, grouping: Grouping, i: int) -> nx.Graph:
    """Interaction graph of set i with vertices relabelled to slots."""
    members = grouping.members(i)
    qubit_graph = interaction_graph(layout, members)
    return nx.relabel_nodes(qubit_graph, {q: k for k, q in enumerate(members)})


def classify_set(layout: PhysicalLayout, grouping: Grouping, i: int) -> ConnectivityClass:
    """FullyConnected / Connected / Disconnected by graph connectivity."""
    graph = set_interaction_graph(layout, grouping, i)
    n = graph.number_of_nodes()
    if graph.number_of_edges() == n * (n - 1) // 2:
        kind = ConnectivityKind.FULLY_CONNECTED
    elif nx.is_connected(graph):
        kind = ConnectivityKind.CONNECTED
    else:
        kind = ConnectivityKind.DISCONNECTED
    return ConnectivityClass(i, kind, graph)
