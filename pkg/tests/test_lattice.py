import math

import numpy as np
import pytest

from errors import CanonicalOrderError, ConfigError, DimensionMismatchError, SelfCouplingError
from lattice import (
    ConnectivityKind,
    Grouping,
    PhysicalLayout,
    all_interaction_matrices,
    build_preset,
    classify_set,
    coupling_strength,
    effective_coupling,
    interaction_matrix,
    square_layout,
)


def _pair_layout(distance, **law):
    return PhysicalLayout(np.array([[0.0, 0.0], [distance, 0.0]]), **law)


def test_coupling_strength_unit_distance():
    assert coupling_strength(_pair_layout(1.0), 0, 1) == pytest.approx(1.0)


def test_coupling_strength_full_range_half():
    assert coupling_strength(_pair_layout(2.0), 0, 1) == pytest.approx(0.5)


def test_coupling_strength_beyond_cutoff_is_zero():
    assert coupling_strength(_pair_layout(2.0, cutoff=1.0), 0, 1) == 0.0


def test_coupling_strength_scales_with_law():
    layout = _pair_layout(2.0, coupling_J=3.0, alpha=2.0, spacing_delta=0.5)
    # J (delta x)^-alpha = 3 * 1^-2
    assert coupling_strength(layout, 0, 1) == pytest.approx(3.0)


def test_self_coupling_rejected():
    with pytest.raises(SelfCouplingError):
        coupling_strength(_pair_layout(1.0), 1, 1)


def test_duplicate_positions_rejected():
    with pytest.raises(ConfigError):
        PhysicalLayout(np.array([[0.0, 0.0], [0.0, 0.0]]))


def test_cutoff_tolerates_float_noise():
    layout = _pair_layout(1.0 + 1e-12, cutoff=1.0)
    assert coupling_strength(layout, 0, 1) > 0


def test_g1_weighted_column_sums(g1):
    F = interaction_matrix(g1.layout, g1.grouping, 0, 1)
    assert g1.layout.positions[list(g1.grouping.members(1))].tolist() == [
        [2.0, 0.0], [3.0, 0.0], [2.0, 1.0], [3.0, 1.0]
    ]
    weighted = np.ones(4) @ F.values
    assert np.allclose(weighted, [2.654, 1.597, 2.654, 1.597], atol=1e-3)


def test_single_qubit_sets_give_scalar_matrix():
    layout = _pair_layout(1.0, coupling_J=2.0)
    grouping = Grouping(((0,), (1,)))
    F = interaction_matrix(layout, grouping, 0, 1)
    assert F.values.tolist() == [[2.0]]


def test_nn_cutoff_without_adjacent_pairs_is_zero():
    layout = square_layout(4, 1, cutoff=1.0)
    grouping = Grouping(((0,), (2, 3)))
    assert not interaction_matrix(layout, grouping, 0, 1).values.any()


def test_interaction_matrix_requires_canonical_order(g1):
    with pytest.raises(CanonicalOrderError):
        interaction_matrix(g1.layout, g1.grouping, 2, 1)


def test_interaction_matrix_transpose_symmetry(g1):
    swapped = Grouping((g1.grouping.sets[1], g1.grouping.sets[0]))
    forward = interaction_matrix(g1.layout, g1.grouping, 0, 1).values
    backward = interaction_matrix(g1.layout, swapped, 0, 1).values
    assert np.array_equal(forward, backward.T)


def test_effective_coupling_trivial_cases(g1_matrices):
    F = g1_matrices[(0, 1)]
    assert effective_coupling(np.zeros(4), F, np.ones(4)) == 0.0
    assert effective_coupling(np.ones(4), F, np.ones(4)) == pytest.approx(F.total())


def test_effective_coupling_worked_vectors(g1_matrices):
    s1 = np.full(4, 0.079)
    s2 = np.array([0.040, -0.738, 0.254, 0.449])
    assert effective_coupling(s1, g1_matrices[(0, 1)], s2) == pytest.approx(0.025, abs=1e-3)


def test_effective_coupling_dimension_mismatch(g1_matrices):
    with pytest.raises(DimensionMismatchError):
        effective_coupling(np.ones(3), g1_matrices[(0, 1)], np.ones(4))


def test_effective_coupling_sign_antisymmetry(rng, g1_matrices):
    F = g1_matrices[(0, 2)]
    for _ in range(20):
        a, b = rng.uniform(-1, 1, 4), rng.uniform(-1, 1, 4)
        assert effective_coupling(-a, F, b) == pytest.approx(-effective_coupling(a, F, b))


def test_effective_coupling_matches_double_sum(rng):
    positions = rng.uniform(0, 5, size=(9, 2))
    layout = PhysicalLayout(positions, alpha=1.3)
    grouping = Grouping(((0, 1, 2, 3), (4, 5, 6, 7, 8)))
    F = interaction_matrix(layout, grouping, 0, 1)
    a, b = rng.uniform(-1, 1, 4), rng.uniform(-1, 1, 5)
    direct = sum(
        a[k] * b[l] * coupling_strength(layout, p, q)
        for k, p in enumerate(grouping.sets[0])
        for l, q in enumerate(grouping.sets[1])
    )
    assert abs(effective_coupling(a, F, b) - direct) < 1e-12


def test_classify_full_range_is_fully_connected(g1):
    assert classify_set(g1.layout, g1.grouping, 0).kind == ConnectivityKind.FULLY_CONNECTED


def test_classify_nn_block_is_connected():
    layout = square_layout(2, 2, cutoff=1.0)
    grouping = Grouping(((0, 1, 2, 3),))
    assert classify_set(layout, grouping, 0).kind == ConnectivityKind.CONNECTED


def test_classify_far_pair_is_disconnected():
    layout = _pair_layout(3.0, cutoff=1.0)
    cls = classify_set(layout, Grouping(((0, 1),)), 0)
    assert cls.kind == ConnectivityKind.DISCONNECTED
    assert not cls.is_connected


def test_grouping_back_map_and_row_major_slots():
    layout = square_layout(2, 2)
    grouping = Grouping.from_members(layout, [[3, 0], [2, 1]])
    assert grouping.sets == ((0, 3), (1, 2))
    assert grouping.locate(3) == (0, 1)


def test_grouping_rejects_overlap():
    with pytest.raises(ConfigError):
        Grouping(((0, 1), (1, 2)))


@pytest.mark.parametrize("name", ["fig8a", "fig8b"])
def test_nn_to_full_range_groupings_have_four_bonds_per_pair(name):
    preset = build_preset(name)
    matrices = all_interaction_matrices(preset.layout, preset.grouping)
    for pair, F in matrices.items():
        assert F.total() == pytest.approx(4.0), pair
    for i in range(preset.grouping.num_sets):
        members = preset.grouping.members(i)
        block = preset.layout.coupling_matrix[np.ix_(members, members)]
        assert not block.any()


def test_triangular_slots_are_bottom_then_top_rows():
    preset = build_preset("fig6b")
    first = preset.layout.positions[list(preset.grouping.members(0))]
    assert first[:4, 1].tolist() == [0, 0, 0, 0]
    assert first[4:, 1].tolist() == [1, 1, 1, 1]
    assert preset.labels == ["A", "A", "B", "B", "A", "A"]


def test_unknown_preset():
    from errors import UnknownPresetError
    with pytest.raises(UnknownPresetError):
        build_preset("fig99")


def test_scaling_preset_qubit_count():
    preset = build_preset("appD-N8")
    assert preset.layout.num_qubits == 116
    assert preset.grouping.num_sets == 8
    assert sum(preset.grouping.sizes) == 116
    assert math.isinf(build_preset("G1").layout.cutoff)
