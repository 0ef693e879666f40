import numpy as np
import pytest

from errors import CapacityError, ConfigError, InfeasiblePatternError, LIConditionError
from lattice import all_interaction_matrices, build_preset, effective_pattern
from pattern_solver import (
    LogicalSolution,
    OptimizerOptions,
    TargetPattern,
    algorithm1_solve,
    brute_force_maximize,
    fit_scale,
    li_condition_check,
    maximize_coupling,
    rescale_solution,
    verify_pattern,
)

PINNED = {
    0: [1.0, 1.0, 1.0, 1.0],
    1: [0.5, -9.3, 3.2, 5.65],
    2: [-2.4, -0.5, 12.595, -5.269],
    3: [-2.4, -0.638, 3.617, 3.967],
}


def _star(num_sets=4, value=4.0):
    return TargetPattern.complete(num_sets, {(0, j): value for j in range(1, num_sets)})


def _random_instance(rng, sizes):
    matrices = {
        (i, j): rng.standard_normal((sizes[i], sizes[j]))
        for i in range(len(sizes)) for j in range(i + 1, len(sizes))
    }
    target = TargetPattern.complete(len(sizes), {p: rng.uniform(-2, 2) for p in matrices})
    return matrices, target


# ==================== TargetPattern / LogicalSolution ====================

def test_target_pattern_requires_explicit_zeros():
    with pytest.raises(ConfigError):
        TargetPattern(3, {(0, 1): 1.0})


def test_ratio_pattern_needs_a_nonzero_entry():
    with pytest.raises(ConfigError):
        TargetPattern.complete(3, {}, ratio_form=True)


def test_solution_box_is_enforced():
    with pytest.raises(ConfigError):
        LogicalSolution([np.array([1.5])], {})


# ==================== Algorithm-1 ====================

def test_pinned_star_run_reproduces_coefficients(g1_matrices):
    solution = algorithm1_solve(g1_matrices, _star(), pinned=PINNED)
    assert solution.rescale_factor == pytest.approx(0.0063, abs=2e-4)
    for j in (1, 2, 3):
        assert solution.couplings[(0, j)] == pytest.approx(0.025, abs=1e-3)
    for pair in [(1, 2), (1, 3), (2, 3)]:
        assert abs(solution.couplings[pair]) < 1e-6
    assert np.allclose(solution.vectors[0], 0.079, atol=0.01)
    assert np.allclose(solution.vectors[1], [0.040, -0.738, 0.254, 0.449], atol=0.01)
    assert solution.max_component == pytest.approx(1.0)
    assert solution.metadata["raw_max"] == pytest.approx(12.595, rel=0.02)


def test_scalar_pair_solve():
    matrices = {(0, 1): np.array([[1.0]])}
    solution = algorithm1_solve(matrices, TargetPattern(2, {(0, 1): 0.5}), pinned={0: [1.0]})
    assert solution.vectors[1] == pytest.approx([0.5])
    assert solution.rescale_factor == 1.0


def test_raw_peak_is_recorded_without_rescaling():
    matrices = {(0, 1): np.array([[1.0]])}
    solution = algorithm1_solve(matrices, TargetPattern(2, {(0, 1): 0.5}), pinned={0: [0.8]})
    assert solution.rescale_factor == 1.0
    assert solution.vectors[1] == pytest.approx([0.625])
    assert solution.metadata["raw_max"] == pytest.approx(0.8)


def test_random_instance_residual(rng):
    matrices, target = _random_instance(rng, (1, 1, 2, 3))
    solution = algorithm1_solve(matrices, target, seed=11)
    assert solution.residual < 1e-9
    realized = effective_pattern(solution.vectors, matrices)
    for pair, value in target.entries.items():
        assert realized[pair] == pytest.approx(value * solution.rescale_factor, abs=1e-9)


def test_generic_instances_always_solve():
    rng = np.random.default_rng(2024)
    for trial in range(100):
        n = int(rng.integers(2, 6))
        sizes = (1,) + tuple(range(1, n))
        matrices, target = _random_instance(rng, sizes)
        solution = algorithm1_solve(matrices, target, seed=trial)
        assert solution.residual < 1e-9
        assert solution.max_component <= 1.0 + 1e-12


def test_algorithm1_is_deterministic_per_seed(rng):
    matrices, target = _random_instance(rng, (2, 2, 3))
    a = algorithm1_solve(matrices, target, seed=5)
    b = algorithm1_solve(matrices, target, seed=5)
    for u, v in zip(a.vectors, b.vectors):
        assert np.array_equal(u, v)


def test_too_small_sets_fail_li_upfront(rng):
    matrices, target = _random_instance(rng, (1, 1, 1))
    with pytest.raises(LIConditionError) as info:
        algorithm1_solve(matrices, target)
    assert info.value.step == 3


def test_degenerate_matrices_fail_after_reseeds():
    F = np.array([[1.0, 0.0]])
    matrices = {(0, 1): np.ones((1, 1)), (0, 2): F, (1, 2): F}
    target = TargetPattern.complete(3, {(0, 1): 1.0, (0, 2): 1.0, (1, 2): 1.0})
    with pytest.raises(LIConditionError):
        algorithm1_solve(matrices, target, seed=1)


# ==================== LI condition and rescale ====================

def test_li_single_nonzero_row():
    check = li_condition_check([np.array([1.0])], [np.array([[2.0, 1.0]])])
    assert check.independent and check.rank == 1


def test_li_identical_rows(rng):
    F = rng.standard_normal((2, 3))
    s = rng.standard_normal(2)
    check = li_condition_check([s, s], [F, F])
    assert not check.independent
    assert check.rank == 1


def test_li_condition_on_pinned_step(g1_matrices):
    check = li_condition_check([PINNED[0], PINNED[1]], [g1_matrices[(0, 2)], g1_matrices[(1, 2)]])
    assert check.independent and check.rank == 2


def test_rescale_factor_of_pinned_star():
    raw = [np.array(PINNED[2])]
    _, _, factor = rescale_solution(raw, {})
    assert factor == pytest.approx(12.595 ** -2)
    assert factor == pytest.approx(0.0063, abs=1e-4)


def test_rescale_keeps_feasible_vectors():
    raw = [np.array([0.5, -1.0]), np.array([0.25])]
    vectors, pattern, factor = rescale_solution(raw, {(0, 1): 0.3})
    assert factor == 1.0
    assert pattern == {(0, 1): 0.3}
    assert np.array_equal(vectors[0], raw[0])


def test_rescale_doubled_vectors_quarter_lambda():
    raw = [2 * np.array([1.0, -0.5]), 2 * np.array([0.2])]
    vectors, pattern, factor = rescale_solution(raw, {(0, 1): 8.0})
    assert factor == pytest.approx(0.25)
    assert pattern[(0, 1)] == pytest.approx(2.0)
    assert np.allclose(vectors[0], [1.0, -0.5])


def test_rescale_rejects_all_zero():
    with pytest.raises(ConfigError):
        rescale_solution([np.zeros(3)], {})


def test_scaling_invariance(rng, g1_matrices):
    vectors = [rng.uniform(-1, 1, 4) for _ in range(4)]
    base = effective_pattern(vectors, g1_matrices)
    c = rng.uniform(0.1, 0.9)
    scaled = effective_pattern([c * v for v in vectors], g1_matrices)
    for pair, value in base.items():
        assert scaled[pair] == pytest.approx(c * c * value)


# ==================== Verification ====================

def test_verify_exact_solution_has_structural_zeros(g1_matrices):
    ones, zeros = np.ones(4), np.zeros(4)
    pattern = TargetPattern.complete(4, {(0, 2): 1.0}, ratio_form=True)
    report = verify_pattern([ones, zeros, ones, zeros], g1_matrices, pattern)
    assert report.ok
    assert report.scale == pytest.approx(8.502, abs=1e-3)


def test_verify_flags_violations(g1_matrices):
    ones = np.ones(4)
    pattern = TargetPattern.complete(4, {(0, 2): 1.0}, ratio_form=True)
    report = verify_pattern([ones] * 4, g1_matrices, pattern)
    assert not report.ok
    assert (0, 1) in [c.pair for c in report.violations]


def test_verify_absolute_tolerance():
    matrices = {(0, 1): np.array([[2.0]])}
    report = verify_pattern([[1.0], [0.5]], matrices, TargetPattern(2, {(0, 1): 1.005}), tol=0.01, relative=False)
    assert report.ok


def test_fit_scale_least_squares():
    assert fit_scale({(0, 1): 2.0, (0, 2): 4.0}, {(0, 1): 1.0, (0, 2): 2.0}) == pytest.approx(2.0)


# ==================== Optimizer ====================

def test_optimizer_two_logical_qubits_on_g1(g1_matrices, fast_settings):
    pattern = TargetPattern.complete(4, {(0, 2): 1.0}, ratio_form=True)
    solution = maximize_coupling(g1_matrices, pattern, settings=fast_settings)
    assert solution.scale >= 8.4
    assert solution.max_component <= 1.0 + 1e-12
    report = verify_pattern(solution, g1_matrices, pattern, tol=1e-5)
    assert report.ok


def test_optimizer_single_pair_uses_full_box(rng, fast_settings):
    F = rng.uniform(0.1, 1.0, size=(2, 3))
    pattern = TargetPattern(2, {(0, 1): 1.0}, ratio_form=True)
    solution = maximize_coupling({(0, 1): F}, pattern, settings=fast_settings)
    assert solution.scale == pytest.approx(F.sum(), rel=1e-6)


def test_optimizer_history_is_monotone(rng, fast_settings):
    F = rng.uniform(0.1, 1.0, size=(2, 2))
    pattern = TargetPattern(2, {(0, 1): 1.0}, ratio_form=True)
    solution = maximize_coupling({(0, 1): F}, pattern, settings=fast_settings)
    history = solution.metadata["history"]
    assert len(history) == fast_settings.OPTIMIZER_STARTS
    assert all(b >= a for a, b in zip(history, history[1:]))


def test_optimizer_with_tied_sets_on_triangular_lattice(fast_settings):
    preset = build_preset("fig6b")
    matrices = all_interaction_matrices(preset.layout, preset.grouping)
    pattern = TargetPattern.complete(
        preset.grouping.num_sets,
        {pair: 1.0 for pair, F in matrices.items() if F.total() > 0},
        ratio_form=True,
    )
    ties = [0 if label == "A" else 1 for label in preset.labels]
    solution = maximize_coupling(matrices, pattern, OptimizerOptions(ties=ties), settings=fast_settings)
    assert solution.scale >= 1.9
    assert np.array_equal(solution.vectors[0], solution.vectors[1])
    assert np.array_equal(solution.vectors[2], solution.vectors[3])


def test_optimizer_infeasible_names_uncoupled_pair(fast_settings):
    matrices = {
        (0, 1): np.zeros((2, 2)),
        (0, 2): np.ones((2, 2)),
        (1, 2): np.ones((2, 2)),
    }
    pattern = TargetPattern.complete(3, {(0, 1): 1.0}, ratio_form=True)
    options = OptimizerOptions(starts=2, max_iterations=400)
    with pytest.raises(InfeasiblePatternError) as info:
        maximize_coupling(matrices, pattern, options, settings=fast_settings)
    assert info.value.pair == (0, 1)


def test_tied_sets_must_match_in_size(fast_settings):
    matrices = {(0, 1): np.ones((1, 2))}
    pattern = TargetPattern(2, {(0, 1): 1.0}, ratio_form=True)
    with pytest.raises(ConfigError):
        maximize_coupling(matrices, pattern, OptimizerOptions(ties=[0, 0]), settings=fast_settings)


# ==================== Brute force ====================

def test_brute_force_matches_optimizer_on_positive_pair(rng, fast_settings):
    F = rng.uniform(0.1, 1.0, size=(3, 3))
    pattern = TargetPattern(2, {(0, 1): 1.0}, ratio_form=True)
    exact = brute_force_maximize({(0, 1): F}, pattern, settings=fast_settings)
    assert exact.scale == pytest.approx(F.sum())
    found = maximize_coupling({(0, 1): F}, pattern, settings=fast_settings)
    assert found.scale >= exact.scale - 1e-6


def test_brute_force_structural_zero():
    # s_3 must vanish for both zero pairs
    matrices = {(0, 1): np.ones((2, 2)), (0, 2): np.ones((2, 1)), (1, 2): np.ones((2, 1))}
    pattern = TargetPattern.complete(3, {(0, 1): 1.0}, ratio_form=True)
    solution = brute_force_maximize(matrices, pattern)
    assert solution.scale == pytest.approx(4.0)
    assert solution.vectors[2].tolist() == [0.0]


def test_brute_force_capacity(g1_matrices):
    with pytest.raises(CapacityError):
        brute_force_maximize(g1_matrices, _star().as_ratios())
