"""
Pattern solver: logical-subspace vectors for target coupling patterns.
"""

from pattern_solver.models import LogicalSolution, TargetPattern, canonical_pairs
from pattern_solver.algorithm1 import LICheck, algorithm1_solve, li_condition_check, rescale_solution
from pattern_solver.optimizer import OptimizerOptions, maximize_coupling
from pattern_solver.verify import PairCheck, PatternReport, fit_scale, verify_pattern
from pattern_solver.brute_force import brute_force_maximize

__all__ = [
    "LogicalSolution",
    "TargetPattern",
    "canonical_pairs",
    "LICheck",
    "algorithm1_solve",
    "li_condition_check",
    "rescale_solution",
    "OptimizerOptions",
    "maximize_coupling",
    "PairCheck",
    "PatternReport",
    "fit_scale",
    "verify_pattern",
    "brute_force_maximize",
]
