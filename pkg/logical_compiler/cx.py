"""
Physical CX between two coupled qubits.
"""

from typing import Optional
import logging

from errors import ConfigError
from lattice.grouping import Grouping
from lattice.layout import PhysicalLayout
from logical_compiler.layers import CXLayer, layer_steps, pair_coupling
from logical_compiler.program import PulseProgram

logger = logging.getLogger(__name__)


def compile_cx(
    layout: PhysicalLayout,
    grouping: Optional[Grouping],
    control: int,
    target: int,
) -> PulseProgram:
    """
    CX(control -> target) in one window of pi/(4 f).

    Every other qubit is decoupled for the whole window, so spectators pick
    up no phase. Raises UncoupledPairError when f = 0.
    """
    m = layout.num_qubits
    for q in (control, target):
        if not 0 <= q < m:
            raise ConfigError(f"Qubit {q} outside a {m}-qubit layout")
    if grouping is not None:
        grouping.validate_against(layout)
    layer = CXLayer(((control, (target,)),), pair_coupling(layout, control, target))
    program = PulseProgram(m, layer_steps(layout, layer, label=f"cx {control + 1}->{target + 1}"))
    program.metadata["cx_count"] = 1
    return program
