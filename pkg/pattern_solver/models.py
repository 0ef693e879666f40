"""
Data types for target interaction patterns and logical-subspace solutions.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from errors import CanonicalOrderError, ConfigError
from lattice.interaction import Matrices, effective_pattern

Pair = Tuple[int, int]


def canonical_pairs(num_sets: int) -> List[Pair]:
    return [(i, j) for i in range(num_sets) for j in range(i + 1, num_sets)]


@dataclass
class TargetPattern:
    """
    Target couplings lambda_ij for every pair i < j.

    In ratio form the entries are the fixed ratios c_ij of
    lambda_ij = c_ij * lambda with a shared, free scale lambda.
    """
    num_sets: int
    entries: Dict[Pair, float]
    ratio_form: bool = False

    def __post_init__(self):
        entries = {}
        for (i, j), value in self.entries.items():
            i, j = int(i), int(j)
            if i >= j:
                raise CanonicalOrderError(i, j)
            if j >= self.num_sets:
                raise ConfigError(f"Pair ({i}, {j}) out of range for {self.num_sets} sets")
            entries[(i, j)] = float(value)
        missing = [p for p in canonical_pairs(self.num_sets) if p not in entries]
        if missing:
            raise ConfigError(f"Target pattern is missing pairs {missing}; zeros must be explicit")
        if self.ratio_form and not any(entries.values()):
            raise ConfigError("Ratio-form pattern needs at least one nonzero c_ij")
        self.entries = dict(sorted(entries.items()))

    @classmethod
    def complete(
        cls,
        num_sets: int,
        partial: Mapping[Pair, float],
        ratio_form: bool = False,
    ) -> "TargetPattern":
        """Fill every unspecified pair with an explicit zero."""
        entries = {pair: 0.0 for pair in canonical_pairs(num_sets)}
        for (i, j), value in partial.items():
            key = (min(i, j), max(i, j))
            entries[key] = float(value)
        return cls(num_sets, entries, ratio_form=ratio_form)

    def value(self, i: int, j: int) -> float:
        return self.entries[(min(i, j), max(i, j))]

    @property
    def pairs(self) -> List[Pair]:
        return list(self.entries)

    def vector(self) -> np.ndarray:
        return np.array([self.entries[p] for p in self.pairs])

    def nonzero_pairs(self) -> List[Pair]:
        return [p for p, v in self.entries.items() if v != 0.0]

    def zero_pairs(self) -> List[Pair]:
        return [p for p, v in self.entries.items() if v == 0.0]

    def scaled(self, scale: float) -> "TargetPattern":
        """Explicit pattern c_ij * scale."""
        return TargetPattern(self.num_sets, {p: v * scale for p, v in self.entries.items()})

    def as_ratios(self) -> "TargetPattern":
        return TargetPattern(self.num_sets, dict(self.entries), ratio_form=True)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "num_sets": self.num_sets,
            "ratio_form": self.ratio_form,
            "entries": [[i + 1, j + 1, v] for (i, j), v in self.entries.items()],
        }


@dataclass
class LogicalSolution:
    """
    One logical-subspace vector per set plus the couplings they realize.

    couplings are always recomputed from the vectors, so the stored values
    agree with the bilinear forms to round-off.
    """
    vectors: List[np.ndarray]
    couplings: Dict[Pair, float]
    residual: float = 0.0
    scale: Optional[float] = None
    rescale_factor: float = 1.0
    metadata: Dict[str, Any] = field(default_factory=dict)

    BOX_SLACK = 1e-12

    def __post_init__(self):
        self.vectors = [np.asarray(v, dtype=float) for v in self.vectors]
        peak = self.max_component
        if peak > 1.0 + self.BOX_SLACK:
            raise ConfigError(f"Solution component {peak} lies outside [-1, 1]")

    @classmethod
    def from_vectors(
        cls,
        vectors: Sequence[Sequence[float]],
        matrices: Matrices,
        target: Optional[Mapping[Pair, float]] = None,
        **extra: Any,
    ) -> "LogicalSolution":
        """Build a solution, recomputing couplings and the residual against target."""
        vectors = [np.asarray(v, dtype=float) for v in vectors]
        couplings = effective_pattern(vectors, matrices)
        residual = 0.0
        if target is not None:
            residual = max((abs(couplings[p] - target[p]) for p in couplings), default=0.0)
        return cls(vectors, couplings, residual=residual, **extra)

    @property
    def num_sets(self) -> int:
        return len(self.vectors)

    @property
    def max_component(self) -> float:
        return max((float(np.max(np.abs(v))) for v in self.vectors if v.size), default=0.0)

    def recompute(self, matrices: Matrices) -> Dict[Pair, float]:
        return effective_pattern(self.vectors, matrices)

    def profile(self) -> np.ndarray:
        return np.concatenate(self.vectors)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary (1-based set labels)."""
        return {
            "vectors": [v.tolist() for v in self.vectors],
            "couplings": [[i + 1, j + 1, lam] for (i, j), lam in self.couplings.items()],
            "residual": self.residual,
            "scale": self.scale,
            "rescale_factor": self.rescale_factor,
            "metadata": dict(self.metadata),
        }
