"""
Cost model: grouping-method vs standard simulation times, SWAP rearrangement
counts and qubit scaling of large registers.
"""

from cost_model.formulas import (
    ETA_0,
    ETA_H,
    CostReport,
    cost_report,
    cost_table,
    crossover_k,
    grouping_cost,
    measured_components,
    standard_cost,
    swap_zeta,
    zeta_lower_bound,
)
from cost_model.routing import brute_force_rearrange, column_shift, swap_rearrange_count
from cost_model.scaling import (
    ScalingConstruction,
    closed_form_qubits,
    polynomial_scaling_construction,
    qudit_embedding_count,
)

__all__ = [
    "ETA_0",
    "ETA_H",
    "CostReport",
    "cost_report",
    "cost_table",
    "crossover_k",
    "grouping_cost",
    "measured_components",
    "standard_cost",
    "swap_zeta",
    "zeta_lower_bound",
    "brute_force_rearrange",
    "column_shift",
    "swap_rearrange_count",
    "ScalingConstruction",
    "closed_form_qubits",
    "polynomial_scaling_construction",
    "qudit_embedding_count",
]
