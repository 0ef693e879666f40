"""
Pattern verification: recompute every realized coupling and classify it.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Sequence, Union

import numpy as np

from lattice.interaction import Matrices, effective_pattern
from pattern_solver.models import LogicalSolution, Pair, TargetPattern


def fit_scale(realized: Mapping[Pair, float], ratios: Mapping[Pair, float]) -> float:
    """Least-squares lambda for lambda_ij ~ c_ij * lambda."""
    c = np.array([ratios[p] for p in ratios])
    lam = np.array([realized[p] for p in ratios])
    norm = float(c @ c)
    if norm == 0.0:
        return 0.0
    return float(c @ lam / norm)


@dataclass
class PairCheck:
    pair: Pair
    target: float
    realized: float
    deviation: float
    match: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            "pair": [self.pair[0] + 1, self.pair[1] + 1],
            "target": self.target,
            "realized": self.realized,
            "deviation": self.deviation,
            "match": self.match,
        }


@dataclass
class PatternReport:
    """Per-pair verdicts; scale is the fitted lambda for ratio patterns."""
    checks: List[PairCheck]
    tolerance: float
    relative: bool
    scale: Optional[float] = None
    max_component: float = 0.0
    notes: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.match for c in self.checks) and self.max_component <= 1.0 + LogicalSolution.BOX_SLACK

    @property
    def violations(self) -> List[PairCheck]:
        return [c for c in self.checks if not c.match]

    @property
    def max_deviation(self) -> float:
        return max((c.deviation for c in self.checks), default=0.0)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "ok": self.ok,
            "tolerance": self.tolerance,
            "relative": self.relative,
            "scale": self.scale,
            "max_component": self.max_component,
            "max_deviation": self.max_deviation,
            "checks": [c.to_dict() for c in self.checks],
            "notes": list(self.notes),
        }


def verify_pattern(
    solution: Union[LogicalSolution, Sequence[Sequence[float]]],
    matrices: Matrices,
    pattern: TargetPattern,
    tol: float = 1e-9,
    relative: bool = True,
) -> PatternReport:
    """
    Compare realized couplings against a target pattern.

    Ratio patterns are first scaled by the fitted lambda. With relative=True
    a pair matches when |realized - target| <= tol * max|realized|, which is
    the criterion for structural zeros; otherwise tol is absolute.
    """
    vectors = solution.vectors if isinstance(solution, LogicalSolution) else [np.asarray(v, float) for v in solution]
    realized = effective_pattern(vectors, matrices)
    peak = max((float(np.max(np.abs(v))) for v in vectors if np.size(v)), default=0.0)

    scale = None
    expected = dict(pattern.entries)
    if pattern.ratio_form:
        scale = fit_scale(realized, pattern.entries)
        expected = {p: c * scale for p, c in pattern.entries.items()}

    reference = max((abs(v) for v in realized.values()), default=0.0)
    bound = tol * reference if relative else tol
    checks = []
    for pair in pattern.pairs:
        deviation = abs(realized[pair] - expected[pair])
        checks.append(PairCheck(pair, expected[pair], realized[pair], deviation, deviation <= bound))

    notes = []
    if peak > 1.0 + LogicalSolution.BOX_SLACK:
        notes.append(f"max |s| = {peak:.6g} exceeds the box")
    if pattern.ratio_form and scale is not None and scale <= 0.0:
        notes.append(f"fitted scale {scale:.3e} is not positive")
    return PatternReport(checks, tol, relative, scale=scale, max_component=peak, notes=notes)
