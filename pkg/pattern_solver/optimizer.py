"""
Coupling-strength maximization for ratio-form patterns.

For ratios c_ij the scale is eliminated by its least-squares fit

    lam_hat = sum c_ij lambda_ij / sum c_ij^2,    r_ij = lambda_ij - c_ij lam_hat

and each start descends g = -lam_hat + mu * sum r_ij^2 inside the box
[-1, 1] with L-BFGS-B, multiplying mu at every ladder stage. The best
penalty iterate is then polished with SLSQP on the exact equality
constraints lambda_ij = c_ij t, maximizing t.
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple
import logging
import time

import numpy as np
from scipy.optimize import minimize

from errors import ConfigError, InfeasiblePatternError
from lattice.interaction import Matrices, matrix_values, set_sizes
from pattern_solver.models import LogicalSolution, Pair, TargetPattern

logger = logging.getLogger(__name__)


@dataclass
class OptimizerOptions:
    """Multi-start settings; None fields fall back to the settings module."""
    starts: Optional[int] = None
    max_iterations: Optional[int] = None
    tolerance: Optional[float] = None
    seed: Optional[int] = None
    penalty_growth: Optional[float] = None
    penalty_interval: Optional[int] = None
    ties: Optional[Sequence[int]] = None

    def resolved(self, settings=None) -> "OptimizerOptions":
        if settings is None:
            from settings import settings
        return OptimizerOptions(
            starts=self.starts or settings.OPTIMIZER_STARTS,
            max_iterations=self.max_iterations or settings.OPTIMIZER_MAX_ITERATIONS,
            tolerance=self.tolerance or settings.OPTIMIZER_TOLERANCE,
            seed=settings.DEFAULT_SEED if self.seed is None else self.seed,
            penalty_growth=self.penalty_growth or settings.OPTIMIZER_PENALTY_GROWTH,
            penalty_interval=self.penalty_interval or settings.OPTIMIZER_PENALTY_INTERVAL,
            ties=self.ties,
        )


@dataclass
class _Problem:
    """Vectorized bilinear pattern over tied variable groups."""
    pairs: List[Pair]
    values: Dict[Pair, np.ndarray]
    ratios: np.ndarray
    groups: List[int]
    slices: List[slice]

    @property
    def size(self) -> int:
        return self.slices[-1].stop if self.slices else 0

    def vectors(self, x: np.ndarray) -> List[np.ndarray]:
        return [x[self.slices[g]] for g in self.groups]

    def couplings(self, x: np.ndarray) -> np.ndarray:
        s = self.vectors(x)
        return np.array([s[i] @ self.values[(i, j)] @ s[j] for i, j in self.pairs])

    def pullback(self, x: np.ndarray, dlam: np.ndarray) -> np.ndarray:
        """Gradient in x of sum_p dlam_p * lambda_p."""
        s = self.vectors(x)
        grad = np.zeros_like(x)
        for w, (i, j) in zip(dlam, self.pairs):
            if w == 0.0:
                continue
            F = self.values[(i, j)]
            grad[self.slices[self.groups[i]]] += w * (F @ s[j])
            grad[self.slices[self.groups[j]]] += w * (F.T @ s[i])
        return grad

    def fit(self, lam: np.ndarray) -> Tuple[float, np.ndarray]:
        c = self.ratios
        scale = float(c @ lam / (c @ c))
        return scale, lam - c * scale


def _build_problem(values: Dict[Pair, np.ndarray], pattern: TargetPattern, ties: Optional[Sequence[int]]) -> _Problem:
    sizes = set_sizes(values, pattern.num_sets)
    groups = list(range(pattern.num_sets)) if ties is None else [int(t) for t in ties]
    if len(groups) != pattern.num_sets:
        raise ConfigError(f"ties has {len(groups)} entries for {pattern.num_sets} sets")
    group_ids = sorted(set(groups))
    remap = {g: k for k, g in enumerate(group_ids)}
    groups = [remap[g] for g in groups]
    group_size: Dict[int, int] = {}
    for i, g in enumerate(groups):
        if group_size.setdefault(g, sizes[i]) != sizes[i]:
            raise ConfigError(f"Tied sets must have equal size (set {i} has {sizes[i]})")
    slices, offset = [], 0
    for g in range(len(group_ids)):
        slices.append(slice(offset, offset + group_size[g]))
        offset += group_size[g]
    pairs = pattern.pairs
    return _Problem(pairs, values, np.array([pattern.entries[p] for p in pairs]), groups, slices)


def _penalty_descent(problem: _Problem, x0: np.ndarray, opts: OptimizerOptions) -> np.ndarray:
    c = problem.ratios
    norm = float(c @ c)
    bounds = [(-1.0, 1.0)] * problem.size
    x = x0
    mu = 1.0
    stages = max(1, opts.max_iterations // opts.penalty_interval)

    def objective(z: np.ndarray, mu: float):
        lam = problem.couplings(z)
        scale, r = problem.fit(lam)
        value = -scale + mu * float(r @ r)
        dlam = -c / norm + 2.0 * mu * r
        return value, problem.pullback(z, dlam)

    for _ in range(stages):
        result = minimize(
            objective, x, args=(mu,), jac=True, method="L-BFGS-B", bounds=bounds,
            options={"maxiter": opts.penalty_interval},
        )
        x = np.clip(result.x, -1.0, 1.0)
        mu *= opts.penalty_growth
    return x


def _polish(problem: _Problem, x: np.ndarray) -> np.ndarray:
    c = problem.ratios
    scale, _ = problem.fit(problem.couplings(x))
    z0 = np.append(x, scale)
    n = problem.size
    active = [k for k, (i, j) in enumerate(problem.pairs) if np.any(problem.values[(i, j)])]
    if not any(c[k] != 0.0 for k in active):
        return x

    def constraints(z):
        lam = problem.couplings(z[:n])
        return (lam - c * z[n])[active]

    def jacobian(z):
        rows = []
        for k in active:
            dlam = np.zeros(len(problem.pairs))
            dlam[k] = 1.0
            rows.append(np.append(problem.pullback(z[:n], dlam), -c[k]))
        return np.array(rows)

    result = minimize(
        lambda z: -z[n],
        z0,
        jac=lambda z: np.append(np.zeros(n), -1.0),
        method="SLSQP",
        bounds=[(-1.0, 1.0)] * n + [(None, None)],
        constraints=[{"type": "eq", "fun": constraints, "jac": jacobian}],
        options={"maxiter": 500, "ftol": 1e-14},
    )
    candidate = np.clip(result.x[:n], -1.0, 1.0)
    return candidate


def _assess(problem: _Problem, x: np.ndarray) -> Tuple[float, float, np.ndarray]:
    lam = problem.couplings(x)
    scale, r = problem.fit(lam)
    return scale, float(np.max(np.abs(r))) if r.size else 0.0, r


def _feasible(scale: float, residual: float, tol: float) -> bool:
    return scale > 1e-12 and residual <= tol * abs(scale)


def maximize_coupling(
    matrices: Matrices,
    pattern: TargetPattern,
    options: Optional[OptimizerOptions] = None,
    settings=None,
) -> LogicalSolution:
    """
    Maximize lambda subject to s_i^T F_ij s_j = c_ij lambda and |s| <= 1.

    Start 0 is the all-ones vector; the others are uniform in the box. The
    returned solution carries the best-so-far history across starts.
    """
    if not pattern.ratio_form:
        pattern = pattern.as_ratios()
    opts = (options or OptimizerOptions()).resolved(settings)
    values = matrix_values(matrices)
    problem = _build_problem(values, pattern, opts.ties)
    streams = np.random.SeedSequence(opts.seed).spawn(opts.starts)

    best_x: Optional[np.ndarray] = None
    best_scale = -np.inf
    fallback: Tuple[float, float, Optional[np.ndarray]] = (-np.inf, np.inf, None)
    history: List[float] = []
    started = time.monotonic()

    for start, stream in enumerate(streams):
        if start == 0:
            x0 = np.ones(problem.size)
        else:
            x0 = np.random.default_rng(stream).uniform(-1.0, 1.0, problem.size)
        x = _penalty_descent(problem, x0, opts)
        scale, residual, _ = _assess(problem, x)
        if not _feasible(scale, residual, opts.tolerance):
            polished = _polish(problem, x)
            p_scale, p_residual, _ = _assess(problem, polished)
            if _feasible(p_scale, p_residual, opts.tolerance) or p_residual < residual:
                x, scale, residual = polished, p_scale, p_residual
        else:
            polished = _polish(problem, x)
            p_scale, p_residual, _ = _assess(problem, polished)
            if _feasible(p_scale, p_residual, opts.tolerance) and p_scale > scale:
                x, scale, residual = polished, p_scale, p_residual

        if _feasible(scale, residual, opts.tolerance) and scale > best_scale:
            best_scale, best_x = scale, x
        elif best_x is None and residual < fallback[1]:
            fallback = (scale, residual, x)
        history.append(float(best_scale) if best_x is not None else float("nan"))

    if best_x is None:
        scale, residual, x = fallback
        lam = problem.couplings(x) if x is not None else np.zeros(len(problem.pairs))
        _, r = problem.fit(lam)
        if abs(scale) <= 1e-12:
            weakest = min(
                (p for p, cij in zip(problem.pairs, problem.ratios) if cij != 0.0),
                key=lambda p: float(np.abs(values[p]).sum()),
            )
            raise InfeasiblePatternError(weakest, float(np.max(np.abs(r))) if r.size else 0.0)
        worst = problem.pairs[int(np.argmax(np.abs(r)))]
        raise InfeasiblePatternError(worst, float(np.max(np.abs(r))))

    vectors = problem.vectors(best_x)
    target = {p: cij * best_scale for p, cij in zip(problem.pairs, problem.ratios)}
    solution = LogicalSolution.from_vectors(
        vectors,
        values,
        target=target,
        scale=float(best_scale),
        metadata={
            "starts": opts.starts,
            "history": history,
            "seed": opts.seed,
            "elapsed_s": round(time.monotonic() - started, 3),
        },
    )
    logger.info(
        f"maximize_coupling | starts={opts.starts} | lambda_max={best_scale:.6f} | "
        f"residual={solution.residual:.3e}"
    )
    return solution
