"""
Parallel CX layers.

A layer runs several CX gates inside one evolution window of length
pi/(4f). Every control with its targets forms one flip class and all
qubits outside the layer are split into spectator classes by coloring;
a decoupling schedule then cancels every coupling between classes, so
only the control-target couplings act. Targets sharing a control must be
mutually uncoupled, and all gates of a layer share one coupling f.
"""

from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple
import logging
import math

from errors import ConfigError, UncoupledPairError
from flip_scheduler.decoupling import decoupling_schedule
from flip_scheduler.parallel import greedy_coloring
from lattice.layout import PhysicalLayout
from logical_compiler.program import Evolve, SingleQubitGate, Step

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


@dataclass(frozen=True)
class CXLayer:
    """CX gates (control, targets) sharing one window."""
    groups: Tuple[Tuple[int, Tuple[int, ...]], ...]
    coupling: float

    @property
    def duration(self) -> float:
        return math.pi / (4 * self.coupling)

    @property
    def edges(self) -> List[Edge]:
        return [(c, t) for c, targets in self.groups for t in targets]

    @property
    def qubits(self) -> List[int]:
        return [q for c, targets in self.groups for q in (c, *targets)]


def pair_coupling(layout: PhysicalLayout, a: int, b: int) -> float:
    if a == b:
        raise ConfigError(f"CX on a single qubit {a}")
    f = float(layout.coupling_matrix[a, b])
    if f == 0:
        raise UncoupledPairError(a, b)
    return f


def greedy_layers(layout: PhysicalLayout, root: int, edges: Sequence[Edge]) -> List[CXLayer]:
    """
    Pack tree edges into layers in order.

    An edge joins the current layer when its control is already prepared,
    its coupling equals the layer's and it does not couple to the other
    targets of the same control.
    """
    remaining = list(edges)
    prepared = {root}
    layers: List[CXLayer] = []
    couplings = layout.coupling_matrix
    while remaining:
        groups: Dict[int, List[int]] = {}
        strength = None
        taken = []
        for c, t in remaining:
            if c not in prepared:
                continue
            f = pair_coupling(layout, c, t)
            if strength is not None and not math.isclose(f, strength, rel_tol=1e-12):
                continue
            if any(couplings[t, u] != 0 for u in groups.get(c, ())):
                continue
            groups.setdefault(c, []).append(t)
            strength = f
            taken.append((c, t))
        if not taken:
            raise ConfigError(f"CX edges {remaining} have no prepared control")
        remaining = [e for e in remaining if e not in taken]
        prepared.update(t for _, t in taken)
        layers.append(CXLayer(tuple((c, tuple(ts)) for c, ts in groups.items()), strength))
    return layers


def layer_steps(layout: PhysicalLayout, layer: CXLayer, label: str = "cx") -> List[Step]:
    """
    H on targets, the decoupled ZZ window, Rz(-pi/2) corrections, H on targets.

    Per gate: CX = H_t Rz_c(-pi/2) Rz_t(-pi/2) exp(-i pi/4 Z_c Z_t) H_t up to phase.
    """
    m = layout.num_qubits
    active = set(layer.qubits)
    spectators = [q for q in range(m) if q not in active]
    spectator_classes = list(greedy_coloring(layout, spectators).classes) if spectators else []
    (first_control, first_targets), *others = layer.groups
    static = (first_control, *first_targets)
    classes = [(c, *ts) for c, ts in others] + spectator_classes
    schedule = decoupling_schedule(layer.duration, classes, static)
    profile = [0.0] * m
    for q in static:
        profile[q] = 1.0

    targets = [t for _, ts in layer.groups for t in ts]
    steps: List[Step] = [SingleQubitGate(t, "H") for t in targets]
    steps.append(Evolve(layer.duration, tuple(profile), schedule, label=label))
    for c, ts in layer.groups:
        steps.append(SingleQubitGate(c, "Rz", angle=-math.pi / 2 * len(ts)))
    steps.extend(SingleQubitGate(t, "Rz", angle=-math.pi / 2) for t in targets)
    steps.extend(SingleQubitGate(t, "H") for t in targets)
    logger.debug(
        f"layer_steps | gates={len(targets)} | classes={len(classes)} | "
        f"flips={schedule.flip_count} | duration={layer.duration:.6g}"
    )
    return steps
