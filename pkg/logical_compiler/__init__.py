"""
Logical compiler: logical circuits to pulse programs of free ZZ windows,
single-qubit gates and flip schedules.
"""

from logical_compiler.gates import GATES, equal_up_to_phase, is_unitary, rx, rz
from logical_compiler.program import (
    Conditional,
    Evolve,
    LogicalCircuit,
    LogicalCX,
    LogicalEvolve,
    LogicalUnitary,
    LogicalX,
    LogicalZRotation,
    MeasureLogical,
    MeasureZ,
    PrepGHZ,
    PulseProgram,
    SingleQubitGate,
    unitary_gate,
)
from logical_compiler.layers import CXLayer, greedy_layers, layer_steps
from logical_compiler.cx import compile_cx
from logical_compiler.ghz import EncodingPlan, compile_ghz_prep, default_cx_tree, encoding_plan
from logical_compiler.unitary import compile_logical_unitary, compile_logical_x, compile_logical_z
from logical_compiler.decouple import compile_decouple
from logical_compiler.delocalize import compile_swap, delocalize_grouping, swap_network, token_destinations
from logical_compiler.measurement import compile_logical_measurement, logical_outcome, orthogonalizing_basis
from logical_compiler.circuit import (
    compile_circuit,
    compile_logical_cx,
    compile_logical_evolve,
    compile_pair_evolution,
    measurement_view,
)
from logical_compiler.listing import program_listing

__all__ = [
    "GATES",
    "equal_up_to_phase",
    "is_unitary",
    "rx",
    "rz",
    "Conditional",
    "Evolve",
    "LogicalCircuit",
    "LogicalCX",
    "LogicalEvolve",
    "LogicalUnitary",
    "LogicalX",
    "LogicalZRotation",
    "MeasureLogical",
    "MeasureZ",
    "PrepGHZ",
    "PulseProgram",
    "SingleQubitGate",
    "unitary_gate",
    "CXLayer",
    "greedy_layers",
    "layer_steps",
    "compile_cx",
    "EncodingPlan",
    "compile_ghz_prep",
    "default_cx_tree",
    "encoding_plan",
    "compile_logical_unitary",
    "compile_logical_x",
    "compile_logical_z",
    "compile_decouple",
    "compile_swap",
    "delocalize_grouping",
    "swap_network",
    "token_destinations",
    "compile_logical_measurement",
    "logical_outcome",
    "orthogonalizing_basis",
    "compile_circuit",
    "compile_logical_cx",
    "compile_logical_evolve",
    "compile_pair_evolution",
    "measurement_view",
    "program_listing",
]
