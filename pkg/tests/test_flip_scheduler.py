import math
from fractions import Fraction

import numpy as np
import pytest

from errors import CapacityError, ConfigError, ImproperColoringError, SpinRangeError
from flip_scheduler import (
    Coloring,
    FlipSchedule,
    ScheduleScope,
    chi_bound,
    decoupling_schedule,
    event_table,
    greedy_coloring,
    grouped_parallel_schedule,
    parallel_schedule,
    schedule_multipliers,
    sequential_schedule,
    verify_schedule,
    walsh_sign,
)
from lattice import Grouping, PhysicalLayout, square_layout


def _full_range(m, rng):
    return PhysicalLayout(rng.uniform(0, 6, size=(m, 2)))


def _checkerboard(width, height):
    classes = ([], [])
    for q in range(width * height):
        x, y = q % width, q // width
        classes[(x + y) % 2].append(q)
    return Coloring(tuple(tuple(c) for c in classes))


# ==================== Sequential ====================

def test_three_qubit_first_segment():
    spins = (0.5, -0.25, 1.0)
    schedule = sequential_schedule(3, spins, 1.0)
    first = Fraction(1, 8) * (1 + Fraction(1)) * (1 + Fraction(-1, 4)) * (1 + Fraction(1, 2))
    assert schedule.events[0].at == first
    assert schedule.events[0].qubits == (0,)
    assert schedule.flip_count <= 8
    layout = square_layout(3, 1)
    assert verify_schedule(layout, schedule) < 1e-9


def test_all_up_spins_need_no_flips():
    schedule = sequential_schedule(4, [1.0] * 4, 2.0)
    assert schedule.events == ()
    assert schedule.flip_count == 0


def test_single_down_spin_is_global_conjugation():
    schedule = sequential_schedule(3, [-1.0, 1.0, 1.0], 1.0)
    assert [(e.at, e.qubits) for e in schedule.events] == [(Fraction(0), (0,)), (Fraction(1), (0,))]


def test_spin_out_of_range():
    with pytest.raises(SpinRangeError):
        sequential_schedule(2, [0.2, 1.5], 1.0)


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
def test_sequential_matches_oracle(m, rng):
    layout = _full_range(m, rng)
    for _ in range(5):
        spins = rng.uniform(-1, 1, m)
        schedule = sequential_schedule(m, spins, 1.7)
        assert schedule.flip_count <= 2 ** m
        assert verify_schedule(layout, schedule) < 1e-9


def test_multipliers_equal_spin_products(rng):
    spins = rng.uniform(-1, 1, 4)
    schedule = sequential_schedule(4, spins, 3.0)
    M = schedule_multipliers(schedule)
    assert np.allclose(M, np.outer(spins, spins) * 3.0 - np.diag(spins ** 2 * 3.0) + np.eye(4) * 3.0)


def test_events_are_sorted_and_within_window(rng):
    schedule = sequential_schedule(5, rng.uniform(-1, 1, 5), 1.0)
    times = [e.at for e in schedule.events]
    assert times == sorted(times)
    assert all(0 <= t <= 1 for t in times)
    assert schedule.flip_count == sum(len(e.qubits) for e in schedule.events)


@pytest.mark.parametrize("m", [2, 4, 6])
def test_extreme_spins_use_at_most_two_flips_per_qubit(m, rng):
    spins = rng.choice([-1.0, 1.0], size=m)
    assert sequential_schedule(m, spins, 1.0).flip_count <= 2 * m
    width = m // 2
    coloring = _checkerboard(width, 2)
    assert parallel_schedule(square_layout(width, 2, cutoff=1.0), coloring, spins, 1.0).flip_count <= 2 * m


# ==================== Parallel ====================

@pytest.mark.parametrize("sizes, expected", [((2,), 4), ((2, 2), 12), ((4, 4), 32), ((2, 2, 2, 2), 108)])
def test_chi_bound_recursion(sizes, expected):
    assert chi_bound(sizes) == expected


@pytest.mark.parametrize("width", [2, 4])
def test_nearest_neighbour_flip_count(width, rng):
    m = 2 * width
    layout = square_layout(width, 2, cutoff=1.0)
    spins = rng.uniform(-0.99, 0.99, m)
    schedule = parallel_schedule(layout, _checkerboard(width, 2), spins, 1.0)
    assert schedule.flip_count == (m // 2) ** 2 + 2 * m
    assert verify_schedule(layout, schedule) < 1e-9


def test_diagonal_lattice_four_colors(rng):
    layout = square_layout(4, 2, cutoff=math.sqrt(2))
    classes = {}
    for q in range(8):
        x, y = q % 4, q // 4
        classes.setdefault((x % 2, y % 2), []).append(q)
    coloring = Coloring(tuple(tuple(c) for c in classes.values()))
    spins = rng.uniform(-0.99, 0.99, 8)
    schedule = parallel_schedule(layout, coloring, spins, 1.0)
    assert schedule.flip_count <= 108
    assert verify_schedule(layout, schedule) < 1e-9


def test_single_color_class_two_flips_each():
    layout = PhysicalLayout(np.array([[0.0, 0.0], [5.0, 0.0]]), cutoff=1.0)
    schedule = parallel_schedule(layout, Coloring(((0, 1),)), [0.3, -0.6], 1.0)
    assert schedule.flip_count == 4


def test_improper_coloring_rejected():
    layout = square_layout(2, 1, cutoff=1.0)
    with pytest.raises(ImproperColoringError):
        parallel_schedule(layout, Coloring(((0, 1),)), [0.1, 0.2], 1.0)


def test_sequential_and_parallel_agree(rng):
    cells = np.array([[x, y] for y in range(3) for x in range(3)], dtype=float)
    for _ in range(200):
        m = int(rng.integers(2, 7))
        cutoff = [1.0, 1.5, math.inf][int(rng.integers(3))]
        layout = PhysicalLayout(cells[rng.choice(len(cells), m, replace=False)], cutoff=cutoff)
        spins = rng.uniform(-1, 1, m)
        a = verify_schedule(layout, sequential_schedule(m, spins, 1.0))
        b = verify_schedule(layout, parallel_schedule(layout, greedy_coloring(layout), spins, 1.0))
        assert a < 1e-9 and b < 1e-9


def test_greedy_coloring_is_proper():
    layout = square_layout(4, 2, cutoff=1.0)
    coloring = greedy_coloring(layout)
    assert len(coloring.classes) == 2
    assert sorted(coloring.qubits) == list(range(8))
    for members in coloring.classes:
        assert not list(layout.coupled_pairs(members))


# ==================== Grouped ====================

def test_grouped_two_sets_shape_only_inter_set_pairs(rng):
    layout = _full_range(4, rng)
    grouping = Grouping(((0, 1), (2, 3)))
    spins = rng.uniform(-0.99, 0.99, 4)
    schedule = grouped_parallel_schedule(grouping, spins, 1.0)
    assert schedule.flip_count <= chi_bound((2, 2))
    assert verify_schedule(layout, schedule, ScheduleScope.INTER_SET, grouping=grouping) < 1e-9
    assert verify_schedule(layout, schedule, ScheduleScope.ALL_PAIRS) > 1e-6


def test_grouped_trivial_cases():
    grouping = Grouping(((0, 1), (2, 3)))
    assert grouped_parallel_schedule(grouping, [1.0] * 4, 1.0).events == ()
    single = Grouping(((0, 1, 2),))
    assert grouped_parallel_schedule(single, [0.2, -0.4, 0.9], 1.0).events == ()


def test_inter_set_scope_needs_grouping(rng):
    schedule = sequential_schedule(2, [0.5, 0.5], 1.0)
    with pytest.raises(ConfigError):
        verify_schedule(_full_range(2, rng), schedule, "inter-set-only")


# ==================== Oracle, reversal, export ====================

def test_empty_schedule_matches_unit_spins(rng):
    layout = _full_range(3, rng)
    assert verify_schedule(layout, sequential_schedule(3, [1.0] * 3, 1.0)) == 0.0


def test_oracle_capacity(fast_settings):
    schedule = FlipSchedule(1.0, (), [1.0] * 15)
    layout = square_layout(15, 1)
    with pytest.raises(CapacityError):
        verify_schedule(layout, schedule, settings=fast_settings)


def test_reversed_schedule_has_same_multipliers(rng):
    spins = rng.uniform(-1, 1, 4)
    schedule = sequential_schedule(4, spins, 1.0)
    back = schedule.reversed()
    assert back.flip_count == schedule.flip_count
    assert np.allclose(schedule_multipliers(back), schedule_multipliers(schedule))
    layout = _full_range(4, rng)
    assert verify_schedule(layout, back) < 1e-9


def test_event_table_lists_events():
    schedule = sequential_schedule(3, (0.5, -0.25, 1.0), 1.0)
    text = event_table(schedule)
    lines = [line for line in text.splitlines() if line and not line.startswith("#")]
    assert len(lines) == len(schedule.events)
    assert lines[0].split() == ["0.281250000", "1"]


# ==================== Decoupling ====================

def test_single_class_flips_at_half_window():
    schedule = decoupling_schedule(2.0, [(3, 4)], static=(0, 1))
    assert [(e.at, e.qubits) for e in schedule.events] == [(Fraction(1, 2), (3, 4)), (Fraction(1), (3, 4))]
    assert schedule.target_spins == (1.0, 1.0, 0.0, 0.0)


def test_walsh_signs_are_balanced():
    for index in range(1, 8):
        assert sum(walsh_sign(index, n) for n in range(8)) == 0


def test_decoupling_multipliers(rng):
    classes = [(2, 3), (4,), (5, 6, 7)]
    schedule = decoupling_schedule(1.5, classes, static=(0, 1))
    M = schedule_multipliers(schedule)
    owner = {0: -1, 1: -1}
    for k, members in enumerate(classes):
        owner.update({q: k for q in members})
    position = {q: k for k, q in enumerate(schedule.qubits)}
    for a in owner:
        for b in owner:
            expected = 1.5 if owner[a] == owner[b] else 0.0
            assert M[position[a], position[b]] == pytest.approx(expected, abs=1e-12)


def test_decoupling_passes_oracle_when_classes_are_uncoupled():
    layout = square_layout(6, 1, cutoff=1.0)
    schedule = decoupling_schedule(1.0, [(2, 4), (3, 5)], static=(0, 1))
    assert verify_schedule(layout, schedule) < 1e-9


def test_decoupling_rejects_shared_qubits():
    with pytest.raises(ConfigError):
        decoupling_schedule(1.0, [(0, 1), (1, 2)])
    with pytest.raises(ConfigError):
        decoupling_schedule(1.0, [(0,)], static=(0,))
