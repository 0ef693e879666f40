"""
Dynamics: statevector, diagonal and logical evolution, Pauli projections,
Trotter composition and many-body constructions.
"""

from dynamics.statevector import Statevector, diagonal_energies, fidelity, sample_measurements, z_signs
from dynamics.evolution import (
    LogicalHamiltonian,
    coupling_weights,
    encode_logical,
    evolve_diagonal,
    evolve_multipliers,
    logical_evolve,
)
from dynamics.pauli import (
    PauliStringHamiltonian,
    ZZProjection,
    averaged_evolution,
    halving_codes,
    zz_projection_transform,
)
from dynamics.trotter import (
    conjugated_zz_evolution,
    exact_evolution,
    loglog_slope,
    operator_distance,
    trotter_errors,
    trotter_evolve,
    xyz_pieces,
    xyz_trotter_unitary,
)
from dynamics.many_body import many_body_z_commutator, many_body_z_exact, pivot_operator
from dynamics.program import Trajectory, apply_logical_circuit, apply_program, circuit_unitary, schedule_multiplier_matrix

__all__ = [
    "Statevector",
    "diagonal_energies",
    "fidelity",
    "sample_measurements",
    "z_signs",
    "LogicalHamiltonian",
    "coupling_weights",
    "encode_logical",
    "evolve_diagonal",
    "evolve_multipliers",
    "logical_evolve",
    "PauliStringHamiltonian",
    "ZZProjection",
    "averaged_evolution",
    "halving_codes",
    "zz_projection_transform",
    "conjugated_zz_evolution",
    "exact_evolution",
    "loglog_slope",
    "operator_distance",
    "trotter_errors",
    "trotter_evolve",
    "xyz_pieces",
    "xyz_trotter_unitary",
    "many_body_z_commutator",
    "many_body_z_exact",
    "pivot_operator",
    "Trajectory",
    "apply_logical_circuit",
    "apply_program",
    "circuit_unitary",
    "schedule_multiplier_matrix",
]
