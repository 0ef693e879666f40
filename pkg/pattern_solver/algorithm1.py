"""
Algorithm-1: sequential linear construction of logical-subspace vectors.

Step 1 fixes s_1 (pinned or random). Step k solves the linear system

    [s_m^T F_mk]_{m<k} x_k = [lambda_mk]_{m<k}

which is solvable whenever its k-1 rows are linearly independent (the LI
condition). A random point of the solution set is taken. The raw vectors
are finally divided by max |s| so every component lies in [-1, 1], which
scales every lambda_ij by 1 / max|s|^2.
"""

from typing import Dict, List, Mapping, NamedTuple, Optional, Sequence, Tuple
import logging

import numpy as np
from scipy import linalg

from errors import ConfigError, LIConditionError, UnderdeterminedStepError
from lattice.interaction import Matrices, matrix_values, set_sizes
from pattern_solver.models import LogicalSolution, Pair, TargetPattern

logger = logging.getLogger(__name__)


class LICheck(NamedTuple):
    """Outcome of the LI condition test at one step."""
    independent: bool
    rank: int


class _StepFailure(Exception):
    def __init__(self, step: int, rank: int = 0, residual: float = 0.0, kind: str = "li"):
        self.step = step
        self.rank = rank
        self.residual = residual
        self.kind = kind


def _settings(settings):
    if settings is None:
        from settings import settings as default_settings
        return default_settings
    return settings


def _rows(fixed_vectors: Sequence[np.ndarray], matrices: Sequence[np.ndarray]) -> np.ndarray:
    return np.array([np.asarray(s) @ np.asarray(F) for s, F in zip(fixed_vectors, matrices)])


def li_condition_check(
    fixed_vectors: Sequence[Sequence[float]],
    matrices: Sequence[np.ndarray],
    threshold: Optional[float] = None,
) -> LICheck:
    """
    True iff the rows {s_m^T F_mk} are linearly independent.

    Singular values below threshold * sigma_max count as zero.
    """
    if len(fixed_vectors) != len(matrices):
        raise ConfigError(f"{len(fixed_vectors)} vectors for {len(matrices)} matrices")
    threshold = _settings(None).LI_RANK_THRESHOLD if threshold is None else threshold
    A = _rows(fixed_vectors, [getattr(F, "values", F) for F in matrices])
    if A.size == 0:
        return LICheck(True, 0)
    sigma = linalg.svd(A, compute_uv=False)
    if sigma.size == 0 or sigma[0] == 0.0:
        return LICheck(False, 0)
    rank = int(np.sum(sigma > threshold * sigma[0]))
    return LICheck(rank == A.shape[0], rank)


def rescale_solution(
    raw_vectors: Sequence[Sequence[float]],
    pattern: Mapping[Pair, float],
) -> Tuple[List[np.ndarray], Dict[Pair, float], float]:
    """
    Divide all vectors by max|s| when it exceeds 1.

    Returns (vectors, scaled pattern, factor applied to lambda). Vectors that
    already fit the box are returned unchanged (factor 1).
    """
    vectors = [np.asarray(v, dtype=float) for v in raw_vectors]
    if any(not np.all(np.isfinite(v)) for v in vectors):
        raise ConfigError("Raw vectors contain non-finite components")
    peak = max((float(np.max(np.abs(v))) for v in vectors if v.size), default=0.0)
    if peak == 0.0:
        raise ConfigError("Cannot rescale an all-zero solution")
    if peak <= 1.0:
        return vectors, dict(pattern), 1.0
    factor = peak ** -2
    scaled = [v / peak for v in vectors]
    return scaled, {p: lam * factor for p, lam in pattern.items()}, factor


def _solve_step(
    step: int,
    A: np.ndarray,
    b: np.ndarray,
    rng: np.random.Generator,
    hint: Optional[np.ndarray],
    threshold: float,
) -> np.ndarray:
    check_sigma = linalg.svd(A, compute_uv=False)
    rank = int(np.sum(check_sigma > threshold * check_sigma[0])) if check_sigma[0] > 0 else 0
    if rank < A.shape[0]:
        raise _StepFailure(step, rank=rank)

    if hint is not None:
        # closest point of the affine solution set to the hint
        x = hint + linalg.pinv(A) @ (b - A @ hint)
    else:
        x, *_ = linalg.lstsq(A, b)
        basis = linalg.null_space(A, rcond=threshold)
        if basis.shape[1]:
            x = x + basis @ rng.standard_normal(basis.shape[1])

    residual = float(np.max(np.abs(A @ x - b))) if b.size else 0.0
    if residual > 1e-9 * max(1.0, float(np.max(np.abs(b))) if b.size else 1.0):
        raise _StepFailure(step, rank=rank, residual=residual, kind="residual")
    return x


def _attempt(
    values: Dict[Pair, np.ndarray],
    sizes: Sequence[int],
    target: TargetPattern,
    rng: np.random.Generator,
    pinned: Mapping[int, np.ndarray],
    threshold: float,
) -> List[np.ndarray]:
    vectors: List[np.ndarray] = []
    first = pinned.get(0)
    vectors.append(np.array(first, dtype=float) if first is not None else rng.standard_normal(sizes[0]))
    for k in range(1, len(sizes)):
        A = _rows(vectors, [values[(m, k)] for m in range(k)])
        b = np.array([target.value(m, k) for m in range(k)])
        hint = pinned.get(k)
        vectors.append(_solve_step(k + 1, A, b, rng, None if hint is None else np.asarray(hint, float), threshold))
    return vectors


def algorithm1_solve(
    matrices: Matrices,
    target: TargetPattern,
    seed: Optional[int] = None,
    pinned: Optional[Mapping[int, Sequence[float]]] = None,
    settings=None,
) -> LogicalSolution:
    """
    Solve {s_i^T F_ij s_j = lambda_ij} up to one global scale.

    pinned maps 0-based set indices to fixed choices: s_1 is taken as is,
    later entries are projected onto their step's solution set.
    """
    cfg = _settings(settings)
    values = matrix_values(matrices)
    sizes = set_sizes(values, target.num_sets)
    pinned = {int(k): np.asarray(v, dtype=float) for k, v in (pinned or {}).items()}
    for k, v in pinned.items():
        if v.shape != (sizes[k],):
            raise ConfigError(f"Pinned vector for set {k} has shape {v.shape}, set has {sizes[k]} slots")

    for k in range(1, target.num_sets):
        if sizes[k] < k:
            raise LIConditionError(step=k + 1, rank=sizes[k], attempts=0)

    seed = cfg.DEFAULT_SEED if seed is None else seed
    attempts = 1 + cfg.ALGORITHM1_MAX_RESEEDS
    streams = np.random.SeedSequence(seed).spawn(attempts)
    failure: Optional[_StepFailure] = None

    for attempt, stream in enumerate(streams):
        rng = np.random.default_rng(stream)
        try:
            raw = _attempt(values, sizes, target, rng, pinned, cfg.LI_RANK_THRESHOLD)
        except _StepFailure as exc:
            failure = exc
            logger.debug(f"Algorithm-1 attempt {attempt} failed at step {exc.step} ({exc.kind})")
            if pinned and attempt == 0 and set(pinned) >= set(range(target.num_sets)):
                break
            continue

        raw_max = max((float(np.max(np.abs(v))) for v in raw if np.size(v)), default=0.0)
        raw_pattern = {p: float(raw[p[0]] @ values[p] @ raw[p[1]]) for p in target.pairs}
        vectors, scaled, factor = rescale_solution(raw, raw_pattern)
        expected = {p: target.entries[p] * factor for p in target.pairs}
        solution = LogicalSolution.from_vectors(
            vectors,
            values,
            target=expected,
            rescale_factor=factor,
            scale=factor if target.ratio_form else None,
            metadata={"attempt": attempt, "raw_max": raw_max, "seed": seed},
        )
        if solution.residual >= cfg.SOLVER_RESIDUAL_TOL:
            failure = _StepFailure(target.num_sets, residual=solution.residual, kind="residual")
            continue
        logger.info(
            f"Algorithm-1 | sets={target.num_sets} | attempt={attempt} | "
            f"factor={factor:.6g} | residual={solution.residual:.3e}"
        )
        return solution

    if failure is not None and failure.kind == "residual":
        raise UnderdeterminedStepError(failure.step, failure.residual)
    raise LIConditionError(
        step=failure.step if failure else 0,
        rank=failure.rank if failure else 0,
        attempts=attempts,
    )
