"""
Interaction matrices F_ij and effective logical couplings
lambda_ij = s_i^T F_ij s_j.
"""

from dataclasses import dataclass
from typing import Any, Dict, Mapping, Sequence, Tuple, Union

import numpy as np

from errors import CanonicalOrderError, ConfigError, DimensionMismatchError
from lattice.grouping import Grouping
from lattice.layout import PhysicalLayout

Pair = Tuple[int, int]


@dataclass(frozen=True, eq=False)
class InteractionMatrix:
    """Dense n_i x n_j block of physical couplings between sets i < j."""
    pair: Pair
    values: np.ndarray

    @property
    def shape(self) -> Tuple[int, int]:
        return self.values.shape

    @property
    def T(self) -> np.ndarray:
        return self.values.T

    def total(self) -> float:
        return float(self.values.sum())

    def to_dict(self) -> Dict[str, Any]:
        return {"pair": [self.pair[0] + 1, self.pair[1] + 1], "values": self.values.tolist()}


MatrixLike = Union[InteractionMatrix, np.ndarray]
Matrices = Mapping[Pair, MatrixLike]


def _values(F: MatrixLike) -> np.ndarray:
    return F.values if isinstance(F, InteractionMatrix) else np.asarray(F, dtype=float)


def interaction_matrix(layout: PhysicalLayout, grouping: Grouping, i: int, j: int) -> InteractionMatrix:
    """F_ij with (F_ij)_kl = J f(|pos(S_i^k) - pos(S_j^l)|)."""
    if i >= j:
        raise CanonicalOrderError(i, j)
    rows = list(grouping.members(i))
    cols = list(grouping.members(j))
    block = np.array(layout.coupling_matrix[np.ix_(rows, cols)])
    block.setflags(write=False)
    return InteractionMatrix((i, j), block)


def all_interaction_matrices(layout: PhysicalLayout, grouping: Grouping) -> Dict[Pair, InteractionMatrix]:
    """Every F_ij for i < j, keyed by pair."""
    grouping.validate_against(layout)
    return {(i, j): interaction_matrix(layout, grouping, i, j) for i, j in grouping.pairs()}


def effective_coupling(s_i: Sequence[float], F: MatrixLike, s_j: Sequence[float]) -> float:
    """Bilinear form s_i^T F s_j."""
    values = _values(F)
    a = np.asarray(s_i, dtype=float)
    b = np.asarray(s_j, dtype=float)
    if values.ndim != 2 or a.shape != (values.shape[0],) or b.shape != (values.shape[1],):
        raise DimensionMismatchError(values.shape, (a.size, b.size), "s_i^T F s_j")
    return float(a @ values @ b)


def effective_pattern(vectors: Sequence[Sequence[float]], matrices: Matrices) -> Dict[Pair, float]:
    """lambda_ij for every pair present in matrices."""
    return {
        (i, j): effective_coupling(vectors[i], F, vectors[j])
        for (i, j), F in sorted(matrices.items())
    }


def matrix_values(matrices: Matrices) -> Dict[Pair, np.ndarray]:
    """Plain ndarray view of a matrices mapping."""
    return {pair: _values(F) for pair, F in matrices.items()}


def set_sizes(matrices: Matrices, num_sets: int) -> Tuple[int, ...]:
    """Infer n_i from the matrices mapping."""
    sizes = [None] * num_sets
    for (i, j), F in matrices.items():
        rows, cols = _values(F).shape
        for idx, n in ((i, rows), (j, cols)):
            if sizes[idx] is not None and sizes[idx] != n:
                raise DimensionMismatchError((sizes[idx],), (n,), f"set {idx}")
            sizes[idx] = n
    if any(n is None for n in sizes):
        missing = [k for k, n in enumerate(sizes) if n is None]
        raise ConfigError(f"No interaction matrix mentions sets {missing}")
    return tuple(sizes)
