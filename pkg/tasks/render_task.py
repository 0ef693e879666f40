"""
Render Task - interaction-graph diagrams

One vertex per logical qubit, placed at its set's centroid; one edge per
nonzero coupling with pen width proportional to |lambda| and a dashed style
for negative couplings. The DOT text is deterministic for a fixed input;
the SVG is optional.
"""
from io import StringIO
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, TYPE_CHECKING

import numpy as np

from lattice import effective_pattern
from rendering import render
from scenarios import set_centroids
from .base_task import BaseTask, RunContext, coupling_metrics

if TYPE_CHECKING:
    from settings import Settings

Pair = Tuple[int, int]

MIN_PENWIDTH = 1.0
MAX_PENWIDTH = 5.0


def graph_elements(
    couplings: Mapping[Pair, float],
    positions: np.ndarray,
    labels: Sequence[str] = (),
    zero_tol: float = 1e-9,
) -> Tuple[List[Dict[str, Any]], List[Dict[str, Any]]]:
    """
    Vertices and edges for the diagram.

    Couplings below zero_tol times the largest |lambda| count as absent.
    """
    vertices = []
    for i, position in enumerate(positions):
        name = f"{i + 1}" if i >= len(labels) else f"{i + 1}{labels[i]}"
        vertices.append({"id": f"L{i + 1}", "label": name, "x": float(position[0]),
                         "y": float(position[1]) if len(position) > 1 else 0.0})

    peak = max((abs(v) for v in couplings.values()), default=0.0)
    edges = []
    for (i, j), value in sorted(couplings.items()):
        if peak == 0.0 or abs(value) <= zero_tol * peak:
            continue
        edges.append({
            "a": f"L{i + 1}",
            "b": f"L{j + 1}",
            "value": float(value),
            "penwidth": MIN_PENWIDTH + (MAX_PENWIDTH - MIN_PENWIDTH) * abs(value) / peak,
            "negative": value < 0,
        })
    return vertices, edges


def render_dot(name: str, source: str, vertices: List[Dict[str, Any]], edges: List[Dict[str, Any]]) -> str:
    return render("interaction_graph.dot.j2", name=name, source=source, vertices=vertices, edges=edges)


def render_svg(vertices: List[Dict[str, Any]], edges: List[Dict[str, Any]]) -> str:
    """Vector image of the same graph, drawn with networkx on the Agg backend."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    import networkx as nx

    graph = nx.Graph()
    for vertex in vertices:
        graph.add_node(vertex["id"], label=vertex["label"])
    for edge in edges:
        graph.add_edge(edge["a"], edge["b"], weight=edge["value"], penwidth=edge["penwidth"])
    pos = {vertex["id"]: (vertex["x"], vertex["y"]) for vertex in vertices}

    with plt.rc_context({"svg.hashsalt": "latticeiq", "svg.fonttype": "none"}):
        fig, ax = plt.subplots(figsize=(4, 4))
        nx.draw_networkx_nodes(graph, pos, ax=ax, node_color="tab:blue")
        nx.draw_networkx_labels(graph, pos, {v["id"]: v["label"] for v in vertices}, ax=ax, font_color="white")
        for negative, style in ((False, "solid"), (True, "dashed")):
            chosen = [e for e in edges if e["negative"] == negative]
            if chosen:
                nx.draw_networkx_edges(
                    graph,
                    pos,
                    edgelist=[(e["a"], e["b"]) for e in chosen],
                    width=[e["penwidth"] for e in chosen],
                    style=style,
                    edge_color="tab:red" if negative else "tab:gray",
                    ax=ax,
                )
        ax.set_axis_off()
        fig.tight_layout()
        buffer = StringIO()
        fig.savefig(buffer, format="svg", metadata={"Date": None})
        plt.close(fig)
    return buffer.getvalue()


def render_graph(
    name: str,
    source: str,
    couplings: Mapping[Pair, float],
    positions: np.ndarray,
    labels: Sequence[str] = (),
    svg: bool = False,
) -> Tuple[Dict[str, str], List[Dict[str, Any]]]:
    """Diagram artifacts keyed by file name, plus the drawn edges."""
    vertices, edges = graph_elements(couplings, positions, labels)
    artifacts = {"interaction_graph.dot": render_dot(name, source, vertices, edges)}
    if svg:
        artifacts["interaction_graph.svg"] = render_svg(vertices, edges)
    return artifacts, edges


class RenderTask(BaseTask):
    """Draw the realized pattern of pinned vectors, else the target pattern."""

    def __init__(self, settings: Optional["Settings"] = None):
        super().__init__(
            name="render",
            description="Interaction-graph diagram of a solution or pattern",
            settings=settings
        )

    def _execute(self, ctx: RunContext) -> Dict[str, Any]:
        resolved = ctx.resolved
        n = resolved.grouping.num_sets
        if resolved.vectors is not None:
            couplings = effective_pattern(resolved.vectors, resolved.matrices)
            source = "realized"
        elif resolved.target is not None:
            couplings = dict(resolved.target.entries)
            source = "target"
        else:
            couplings = {}
            source = "empty"

        artifacts, edges = render_graph(
            ctx.scenario.name,
            source,
            couplings,
            set_centroids(resolved.layout, resolved.grouping),
            resolved.labels,
            svg=ctx.svg,
        )
        self.log_activity("rendered", f"{ctx.scenario.name} | {source} | vertices={n} | edges={len(edges)}")

        metrics = {"vertices": n, "edges": len(edges)}
        metrics.update(coupling_metrics(couplings))
        return {
            "metrics": metrics,
            "records": {"graph": {"source": source, "vertices": n, "edges": len(edges)}},
            "artifacts": artifacts,
        }
