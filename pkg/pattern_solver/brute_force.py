"""
Exhaustive search over s in {-1, 0, 1} for small ratio patterns.
"""

from typing import Optional
import itertools
import logging

import numpy as np

from errors import CapacityError
from lattice.interaction import Matrices, matrix_values, set_sizes
from pattern_solver.models import LogicalSolution, TargetPattern

logger = logging.getLogger(__name__)


def brute_force_maximize(
    matrices: Matrices,
    pattern: TargetPattern,
    tol: float = 1e-9,
    settings=None,
) -> Optional[LogicalSolution]:
    """
    Best integer-valued solution of lambda_ij = c_ij * lambda, or None.

    Only exact ratio matches (within tol * lambda) with lambda > 0 count.
    """
    if settings is None:
        from settings import settings
    values = matrix_values(matrices)
    sizes = set_sizes(values, pattern.num_sets)
    total = sum(sizes)
    if total > settings.BRUTE_FORCE_MAX_COMPONENTS:
        raise CapacityError(total, settings.BRUTE_FORCE_MAX_COMPONENTS, "brute-force search")

    # every assignment as rows of one (3^total, total) table
    grid = np.array(list(itertools.product((-1.0, 0.0, 1.0), repeat=total)))
    offsets = np.cumsum((0,) + sizes)
    blocks = [grid[:, offsets[i]:offsets[i + 1]] for i in range(pattern.num_sets)]

    pairs = pattern.pairs
    c = np.array([pattern.entries[p] for p in pairs])
    lam = np.stack(
        [np.einsum("bk,kl,bl->b", blocks[i], values[(i, j)], blocks[j]) for i, j in pairs],
        axis=1,
    )
    scale = lam @ c / float(c @ c)
    residual = np.max(np.abs(lam - np.outer(scale, c)), axis=1)
    feasible = (scale > tol) & (residual <= tol * np.maximum(scale, 1.0))
    if not feasible.any():
        logger.info(f"brute_force_maximize | components={total} | no feasible assignment")
        return None

    best = int(np.argmax(np.where(feasible, scale, -np.inf)))
    vectors = [block[best] for block in blocks]
    logger.info(f"brute_force_maximize | components={total} | lambda={scale[best]:.6f}")
    return LogicalSolution.from_vectors(
        vectors,
        values,
        target={p: cij * scale[best] for p, cij in zip(pairs, c)},
        scale=float(scale[best]),
        metadata={"search": "exhaustive", "assignments": int(grid.shape[0])},
    )
