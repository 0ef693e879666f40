import math

import numpy as np
import pytest

from dynamics import Statevector, apply_logical_circuit, apply_program, encode_logical
from errors import (
    ConfigError,
    DisconnectedSetError,
    NonOrthogonalBasisError,
    RoutingError,
    UncoupledPairError,
    VerificationError,
)
from lattice import Grouping, PhysicalLayout, all_interaction_matrices, effective_pattern, square_layout
from logical_compiler import (
    GATES,
    LogicalCircuit,
    LogicalCX,
    LogicalEvolve,
    MeasureZ,
    PrepGHZ,
    compile_circuit,
    compile_cx,
    compile_decouple,
    compile_ghz_prep,
    compile_logical_measurement,
    compile_logical_unitary,
    compile_logical_x,
    compile_logical_z,
    delocalize_grouping,
    equal_up_to_phase,
    logical_outcome,
    orthogonalizing_basis,
    program_listing,
    rz,
)
from tests.helpers import cx_reference, encoded, eight_qubit_block, program_unitary, random_state, random_unitary


def _two_rows():
    layout = square_layout(3, 2, cutoff=1.0)
    return layout, Grouping.from_members(layout, [[0, 1, 2], [3, 4, 5]])


def _apply_on_set(logical, i, U):
    return Statevector(logical).apply_single(i, U).data


# ==================== CX ====================

def test_cx_nearest_neighbour_time_and_action():
    layout = square_layout(2, 1, cutoff=1.0)
    program = compile_cx(layout, None, 0, 1)
    assert program.total_time == pytest.approx(math.pi / 4)
    assert equal_up_to_phase(program_unitary(program, layout), cx_reference(2, 0, 1))


def test_cx_at_distance_two_takes_twice_as_long():
    layout = square_layout(3, 1)
    program = compile_cx(layout, None, 0, 2)
    assert program.total_time == pytest.approx(math.pi / 2)
    assert equal_up_to_phase(program_unitary(program, layout), cx_reference(3, 0, 2))


def test_cx_leaves_spectators_untouched():
    layout = square_layout(5, 1, cutoff=1.0)
    program = compile_cx(layout, None, 2, 1)
    assert equal_up_to_phase(program_unitary(program, layout), cx_reference(5, 2, 1))


def test_cx_on_uncoupled_pair(nn_line):
    with pytest.raises(UncoupledPairError):
        compile_cx(nn_line, None, 0, 2)


# ==================== GHZ ====================

def test_eight_qubit_ghz_prep_three_layers():
    layout, grouping = eight_qubit_block()
    program = compile_ghz_prep(layout, grouping, 0)
    assert program.metadata["layers"] == 3
    assert program.metadata["cx_count"] == 7
    assert program.total_time == pytest.approx(3 * math.pi / 4)

    final = apply_program(Statevector.zeros(16), program, layout).state
    logical = np.zeros(8, dtype=complex)
    logical[[0, 4]] = 1 / math.sqrt(2)
    assert final.fidelity(encoded(logical, grouping, 16)) >= 1 - 1e-9


def test_star_set_prepares_in_one_window():
    positions = np.array([[0, 0], [1, 0], [-1, 0], [0, 1], [0, -1]], dtype=float)
    layout = PhysicalLayout(positions, cutoff=1.0)
    grouping = Grouping.from_members(layout, [range(5)])
    program = compile_ghz_prep(layout, grouping, 0)
    assert program.metadata["layers"] == 1
    assert program.total_time == pytest.approx(math.pi / 4)
    final = apply_program(Statevector.zeros(5), program, layout).state
    assert final.fidelity(encoded([1 / math.sqrt(2)] * 2, grouping, 5)) >= 1 - 1e-9


def test_single_qubit_set_is_just_a_hadamard():
    layout = square_layout(3, 1, cutoff=1.0)
    grouping = Grouping.from_members(layout, [[0], [1, 2]])
    program = compile_ghz_prep(layout, grouping, 0)
    assert program.total_time == 0
    assert len(program.steps) == 1


def test_disconnected_set_is_rejected(nn_line):
    grouping = Grouping.from_members(nn_line, [[0, 2], [1, 3]])
    with pytest.raises(DisconnectedSetError):
        compile_ghz_prep(nn_line, grouping, 0)


# ==================== Logical unitaries ====================

def test_eight_qubit_logical_hadamard(rng):
    layout, grouping = eight_qubit_block()
    program = compile_logical_unitary(layout, grouping, 0, GATES["H"])
    assert program.total_time == pytest.approx(3 * math.pi / 2)
    logical = random_state(rng, 3)
    final = apply_program(encoded(logical, grouping, 16), program, layout).state
    expected = encoded(_apply_on_set(logical, 0, GATES["H"]), grouping, 16)
    assert final.fidelity(expected) >= 1 - 1e-9


def test_unitary_then_inverse_is_identity(rng):
    layout, grouping = _two_rows()
    for i in (0, 1):
        U = random_unitary(rng)
        program = compile_logical_unitary(layout, grouping, i, U) + compile_logical_unitary(
            layout, grouping, i, U.conj().T
        )
        logical = random_state(rng, 2)
        start = encoded(logical, grouping, 6)
        final = apply_program(start, program, layout).state
        assert final.fidelity(start) >= 1 - 1e-9


def test_unitary_matches_logical_action(rng):
    layout, grouping = _two_rows()
    U = random_unitary(rng)
    logical = random_state(rng, 2)
    program = compile_logical_unitary(layout, grouping, 1, U)
    final = apply_program(encoded(logical, grouping, 6), program, layout).state
    assert final.fidelity(encoded(_apply_on_set(logical, 1, U), grouping, 6)) >= 1 - 1e-9


@pytest.mark.parametrize("U, route", [(rz(0.7), "z-rotation"), (GATES["X"], "transversal-x"), (GATES["Y"], "transversal-x")])
def test_diagonal_and_flip_unitaries_cost_no_time(rng, U, route):
    layout, grouping = _two_rows()
    program = compile_logical_unitary(layout, grouping, 0, U)
    assert program.metadata["route"] == route
    assert program.total_time == 0
    logical = random_state(rng, 2)
    final = apply_program(encoded(logical, grouping, 6), program, layout).state
    assert final.fidelity(encoded(_apply_on_set(logical, 0, U), grouping, 6)) >= 1 - 1e-9


def test_z_rotation_on_a_subset(rng):
    layout, grouping = _two_rows()
    program = compile_logical_z(grouping, 0, 1.1, 6, qubits=[2])
    assert len(program.steps) == 1
    logical = random_state(rng, 2)
    final = apply_program(encoded(logical, grouping, 6), program, layout).state
    assert final.fidelity(encoded(_apply_on_set(logical, 0, rz(1.1)), grouping, 6)) >= 1 - 1e-9
    with pytest.raises(ConfigError):
        compile_logical_z(grouping, 0, 1.1, 6, qubits=[4])


def test_z_rotation_splits_the_angle_equally():
    _, grouping = _two_rows()
    members = grouping.members(0)
    program = compile_logical_z(grouping, 0, 1.2, 6)
    assert [step.qubit for step in program.steps] == list(members)
    assert [step.angle for step in program.steps] == pytest.approx([1.2 / len(members)] * len(members))


def test_logical_x_flips_every_member():
    _, grouping = _two_rows()
    program = compile_logical_x(grouping, 1, 6)
    assert [s.qubit for s in program.steps] == [3, 4, 5]


# ==================== Decoupling ====================

def test_decoupling_one_set_cancels_the_logical_phase(rng):
    layout = square_layout(3, 2)
    grouping = Grouping.from_members(layout, [[0, 1, 2], [3, 4, 5]])
    logical = random_state(rng, 2)
    start = encoded(logical, grouping, 6)
    final = apply_program(start, compile_decouple(grouping, [0], 1.3), layout).state
    assert 1 - final.fidelity(start) <= 1e-9


def test_decoupling_every_set(rng):
    layout = square_layout(3, 2)
    grouping = Grouping.from_members(layout, [[0, 3], [1, 4], [2, 5]])
    start = encoded(random_state(rng, 3), grouping, 6)
    final = apply_program(start, compile_decouple(grouping, [0, 1, 2], 0.9), layout).state
    assert 1 - final.fidelity(start) <= 1e-9


def test_empty_subset_is_plain_evolution():
    layout, grouping = _two_rows()
    program = compile_decouple(grouping, [], 0.5, 6)
    assert program.steps[0].schedule is None
    assert program.total_time == pytest.approx(0.5)


# ==================== Delocalization ====================

def test_identity_redistribution_is_empty(g1):
    program = delocalize_grouping(g1.layout, g1.grouping, g1.grouping)
    assert program.steps == []
    assert program.metadata["swap_count"] == 0


def test_adjacent_transposition(rng):
    layout = square_layout(2, 1, cutoff=1.0)
    source = Grouping.from_members(layout, [[0], [1]])
    target = Grouping.from_members(layout, [[1], [0]])
    program = delocalize_grouping(layout, source, target)
    assert program.metadata["swap_count"] == 1
    assert program.metadata["cx_count"] == 3
    assert program.total_time == pytest.approx(3 * math.pi / 4)
    logical = random_state(rng, 2)
    final = apply_program(encoded(logical, source, 2), program, layout).state
    assert final.fidelity(encoded(logical, target, 2)) >= 1 - 1e-9


def test_reversal_on_a_chain_respects_the_swap_bound():
    layout = square_layout(5, 1, cutoff=1.0)
    source = Grouping.from_members(layout, [[q] for q in range(5)])
    target = Grouping.from_members(layout, [[4 - q] for q in range(5)])
    program = delocalize_grouping(layout, source, target)
    assert program.metadata["swap_count"] <= (25 - 5) // 2


def test_rows_to_spread_sets_on_sixteen_qubits(rng):
    layout = square_layout(4, 4, cutoff=1.0)
    rows = Grouping.from_members(layout, [[4 * r + c for c in range(4)] for r in range(4)])
    labels = [int(x) % 2 + 2 * (int(y) % 2) for x, y in layout.positions]
    spread = Grouping.from_labels(layout, labels)
    program = delocalize_grouping(layout, rows, spread)
    assert program.metadata["swap_count"] > 0
    assert program.metadata["cx_count"] == 3 * program.metadata["swap_count"]
    logical = random_state(rng, 4)
    final = apply_program(encoded(logical, rows, 16), program, layout).state
    assert final.fidelity(encoded(logical, spread, 16)) >= 1 - 1e-9


def test_redistribution_across_components_fails():
    layout = PhysicalLayout(np.array([[0, 0], [1, 0], [5, 0]], dtype=float), cutoff=1.0)
    source = Grouping.from_members(layout, [[0], [2]])
    target = Grouping.from_members(layout, [[2], [0]])
    with pytest.raises(RoutingError):
        delocalize_grouping(layout, source, target)


# ==================== Measurement ====================

def test_orthogonalizing_basis_keeps_remainders_orthogonal(rng):
    psi = random_state(rng, 3)
    phi = random_state(rng, 3)
    phi = phi - np.vdot(psi, phi) * psi
    phi /= np.linalg.norm(phi)
    u, perp = orthogonalizing_basis(psi, phi)
    for v in (u, perp):
        a = v.conj() @ psi.reshape(2, -1)
        b = v.conj() @ phi.reshape(2, -1)
        assert abs(np.vdot(b, a)) < 1e-9


def test_logical_z_measurement_reads_one_qubit():
    layout, grouping = _two_rows()
    program = compile_logical_measurement(layout, grouping, 0, ((1, 0), (0, 1)))
    assert isinstance(program.steps[0], MeasureZ)
    assert program.metadata["decoder"] == {"0": 0, "1": 1}
    assert program.metadata["corrections"] == 0
    assert program.total_time == 0


def test_non_orthogonal_basis():
    layout, grouping = _two_rows()
    with pytest.raises(NonOrthogonalBasisError):
        compile_logical_measurement(layout, grouping, 0, ((1, 0), (1, 1)))


def test_x_basis_measurement_statistics():
    layout = square_layout(3, 1, cutoff=1.0)
    grouping = Grouping.from_members(layout, [[0, 1, 2]])
    plus, minus = np.array([1, 1]) / math.sqrt(2), np.array([1, -1]) / math.sqrt(2)
    program = compile_logical_measurement(layout, grouping, 0, (plus, minus))
    targets = [encoded(plus, grouping, 3), encoded(minus, grouping, 3)]
    start = Statevector.zeros(3)
    rng = np.random.default_rng(11)
    shots = 10_000
    ones = 0
    for _ in range(shots):
        run = apply_program(start, program, layout, rng=rng)
        outcome = logical_outcome(program, run.outcomes)
        ones += outcome
        assert run.state.fidelity(targets[outcome]) >= 1 - 1e-9
    sigma = math.sqrt(0.25 / shots)
    assert abs(ones / shots - 0.5) <= 5 * sigma


def test_born_rule_on_two_logical_qubits(rng):
    layout, grouping = _two_rows()
    U = random_unitary(rng)
    psi, perp = U[:, 0], U[:, 1]
    program = compile_logical_measurement(layout, grouping, 0, (psi, perp))
    logical = random_state(rng, 2)
    block = logical.reshape(2, 2)
    conditional = [psi.conj() @ block, perp.conj() @ block]
    p0 = float(np.linalg.norm(conditional[0]) ** 2)

    start = encoded(logical, grouping, 6)
    shots = 10_000
    zeros = 0
    for shot in range(shots):
        run = apply_program(start, program, layout, rng=rng)
        outcome = logical_outcome(program, run.outcomes)
        zeros += outcome == 0
        if shot < 50:
            basis = psi if outcome == 0 else perp
            after = np.kron(basis, conditional[outcome] / np.linalg.norm(conditional[outcome]))
            assert run.state.fidelity(encoded(after, grouping, 6)) >= 1 - 1e-9
    sigma = math.sqrt(p0 * (1 - p0) / shots)
    assert abs(zeros / shots - p0) <= 5 * sigma + 1e-12


def test_measuring_a_basis_state_is_certain():
    layout, grouping = _two_rows()
    psi = np.array([0.6, 0.8j])
    perp = np.array([-np.conj(psi[1]), np.conj(psi[0])])
    program = compile_logical_measurement(layout, grouping, 1, (psi, perp))
    start = encoded(np.kron([1, 0], psi), grouping, 6)
    rng = np.random.default_rng(3)
    for _ in range(20):
        run = apply_program(start, program, layout, rng=rng)
        assert logical_outcome(program, run.outcomes) == 0
        assert run.state.fidelity(start) >= 1 - 1e-9


# ==================== Circuits ====================

def test_logical_cx_builds_a_bell_pair():
    layout, grouping = _two_rows()
    circuit = LogicalCircuit(2).append(PrepGHZ(0)).append(LogicalCX(0, 1))
    program = compile_circuit(layout, grouping, circuit)
    assert program.metadata["logical_cx"] == 1
    final = apply_program(Statevector.zeros(6), program, layout).state
    ideal = apply_logical_circuit(Statevector.zeros(2), circuit).state
    assert final.fidelity(encode_logical(ideal, grouping, 6)) >= 1 - 1e-9


def test_logical_evolution_with_ungrouped_qubits(rng):
    layout = square_layout(3, 2, cutoff=1.0)
    grouping = Grouping.from_members(layout, [[0, 1], [3, 4]])
    circuit = LogicalCircuit(2).append(LogicalEvolve({(0, 1): 0.5}, 1.2))
    program = compile_circuit(layout, grouping, circuit)
    logical = random_state(rng, 2)
    final = apply_program(encoded(logical, grouping, 6), program, layout).state
    ideal = apply_logical_circuit(Statevector(logical), circuit).state
    assert final.fidelity(encode_logical(ideal, grouping, 6)) >= 1 - 1e-9


def test_given_vectors_set_the_window(g1):
    vectors = [np.ones(4)] * 4
    realized = effective_pattern(vectors, all_interaction_matrices(g1.layout, g1.grouping))
    halved = {p: v / 2 for p, v in realized.items()}
    circuit = LogicalCircuit(4).append(LogicalEvolve(halved, 0.1, vectors=vectors))
    program = compile_circuit(g1.layout, g1.grouping, circuit)
    assert program.steps[0].duration == pytest.approx(0.05)
    assert program.metadata["flips"] == 0

    skewed = dict(halved)
    skewed[(0, 1)] *= 3
    with pytest.raises(VerificationError):
        compile_circuit(g1.layout, g1.grouping, LogicalCircuit(4).append(LogicalEvolve(skewed, 0.1, vectors=vectors)))


def test_zero_pattern_compiles_to_decoupling():
    layout, grouping = _two_rows()
    circuit = LogicalCircuit(2).append(LogicalEvolve({}, 0.4))
    program = compile_circuit(layout, grouping, circuit)
    assert program.steps[0].schedule.kind == "decoupling"
    assert program.total_time == pytest.approx(0.4)


def test_circuit_size_must_match_grouping():
    layout, grouping = _two_rows()
    with pytest.raises(ConfigError):
        compile_circuit(layout, grouping, LogicalCircuit(3))


def test_listing_shows_branches():
    layout, grouping = _two_rows()
    plus, minus = np.array([1, 1]) / math.sqrt(2), np.array([1, -1]) / math.sqrt(2)
    program = compile_logical_measurement(layout, grouping, 0, (plus, minus))
    text = program_listing(program)
    assert text.startswith("# pulse program: 6 qubits")
    assert "[set1.q1=0]" in text
    assert "measure" in text
