import math

import numpy as np
import pytest

from errors import ConfigError, DimensionMismatchError, ScenarioError, UnknownPresetError
from logical_compiler import MeasureLogical
from scenarios import (
    Expectation,
    OperationSpec,
    dump_scenario,
    expand_scenario,
    list_fixtures,
    load_fixture,
    load_scenario,
    parse_scenario,
)
from scenarios.expand import build_operation

FIXTURES = list_fixtures()

G1_ROW_C = """
name = "toy"

[grouping]
preset = "G1"

[target]
couplings = [[1, 3, 1.0]]

[vectors]
sets = [[1.0, 1.0, 1.0, 1.0], [0.0, 0.0, 0.0, 0.0], [1.0, 1.0, 1.0, 1.0], [0.0, 0.0, 0.0, 0.0]]
"""


# ==================== Loading ====================

def test_fixture_library_is_populated():
    names = {path.stem for path in FIXTURES}
    assert {"appendix-c-star", "fig4-g2-row-g", "fig5-cube-fullrange", "fig6a-hex", "appD-N8"} <= names


@pytest.mark.parametrize("path", FIXTURES, ids=lambda p: p.stem)
def test_every_fixture_loads_and_expands(path):
    scenario = load_scenario(path)
    assert scenario.name == path.stem
    resolved = expand_scenario(scenario)
    assert resolved.scenario.is_expanded
    covered = [q for members in resolved.grouping.sets for q in members]
    assert len(covered) == len(set(covered))
    assert max(covered) < resolved.layout.num_qubits


@pytest.mark.parametrize("path", FIXTURES, ids=lambda p: p.stem)
def test_expanded_form_round_trips(path):
    expanded = expand_scenario(load_scenario(path)).scenario
    text = dump_scenario(expanded)
    assert dump_scenario(parse_scenario(text)) == text


@pytest.mark.parametrize("path", FIXTURES, ids=lambda p: p.stem)
def test_expansion_is_idempotent(path):
    once = expand_scenario(load_scenario(path)).scenario
    twice = expand_scenario(once).scenario
    assert dump_scenario(twice) == dump_scenario(once)


def test_reconstructed_presets_are_recorded():
    expanded = expand_scenario(load_fixture("fig4-g2-row-g")).scenario
    assert expanded.expanded_from == {"geometry": "reconstructed", "grouping": "G2", "topology": "centroid-nn"}


def test_malformed_toml_is_a_config_error():
    with pytest.raises(ScenarioError) as excinfo:
        parse_scenario("name = [unterminated", source="broken.toml")
    assert excinfo.value.exit_code == 2
    assert "malformed TOML" in str(excinfo.value)


def test_unknown_field_is_rejected():
    with pytest.raises(ScenarioError, match="colour"):
        parse_scenario('name = "x"\ncolour = "red"\n')


def test_missing_file(tmp_path):
    with pytest.raises(ScenarioError, match="no such scenario file"):
        load_scenario(tmp_path / "absent.toml")


def test_unknown_fixture_name():
    with pytest.raises(ScenarioError):
        load_fixture("no-such-fixture")


# ==================== Physical expansion ====================

def test_unknown_grouping_preset():
    scenario = parse_scenario('name = "x"\n[grouping]\npreset = "G9"\n')
    with pytest.raises(UnknownPresetError) as excinfo:
        expand_scenario(scenario)
    assert excinfo.value.exit_code == 2


def test_preset_with_geometry_is_rejected():
    scenario = parse_scenario('name = "x"\n[layout]\nwidth = 4\n[grouping]\npreset = "G1"\n')
    with pytest.raises(ConfigError, match="fixes the lattice"):
        expand_scenario(scenario)


def test_explicit_sets_are_one_based_and_ordered():
    scenario = parse_scenario('name = "x"\n[layout]\nwidth = 3\nheight = 1\n[grouping]\nsets = [[3, 1], [2]]\n')
    resolved = expand_scenario(scenario)
    assert resolved.grouping.sets == ((2, 0), (1,))
    assert resolved.layout.cutoff == math.inf


def test_set_outside_lattice():
    scenario = parse_scenario('name = "x"\n[layout]\nwidth = 2\nheight = 1\n[grouping]\nsets = [[1, 3]]\n')
    with pytest.raises(ConfigError, match="outside 1..2"):
        expand_scenario(scenario)


def test_missing_grouping_gives_one_set_per_qubit():
    resolved = expand_scenario(parse_scenario('name = "x"\n[layout]\nwidth = 2\nheight = 2\n'))
    assert resolved.grouping.num_sets == 4
    assert resolved.grouping.sets == ((0,), (1,), (2,), (3,))


def test_layout_without_geometry_or_preset():
    with pytest.raises(ConfigError):
        expand_scenario(parse_scenario('name = "x"\n'))


# ==================== Targets ====================

def test_centroid_nn_on_g2_is_a_ring():
    resolved = expand_scenario(load_fixture("fig4-g2-row-g"))
    nonzero = {pair for pair, value in resolved.target.entries.items() if value != 0}
    assert nonzero == {(0, 1), (0, 2), (1, 3), (2, 3)}


def test_cube_topology_needs_eight_sets():
    scenario = parse_scenario('name = "x"\n[grouping]\npreset = "G1"\n[target]\ntopology = "cube"\n')
    with pytest.raises(ConfigError, match="8 logical qubits"):
        expand_scenario(scenario)


def test_cube_topology_ratios():
    resolved = expand_scenario(load_fixture("fig5-cube-fullrange"))
    values = sorted({round(v, 9) for v in resolved.target.entries.values()})
    assert values == pytest.approx([1 / math.sqrt(3), 1 / math.sqrt(2), 1.0])


def test_unknown_topology():
    scenario = parse_scenario('name = "x"\n[grouping]\npreset = "G1"\n[target]\ntopology = "torus"\n')
    with pytest.raises(UnknownPresetError, match="torus"):
        expand_scenario(scenario)


@pytest.mark.parametrize("couplings, message", [
    ("[[1, 5, 1.0]]", "out of range"),
    ("[[2, 2, 1.0]]", "with itself"),
    ("[[1, 2, 1.0], [2, 1, 0.5]]", "listed twice"),
])
def test_bad_explicit_couplings(couplings, message):
    scenario = parse_scenario(f'name = "x"\n[grouping]\npreset = "G1"\n[target]\ncouplings = {couplings}\n')
    with pytest.raises(ConfigError, match=message):
        expand_scenario(scenario)


def test_expanded_target_lists_every_pair():
    expanded = expand_scenario(parse_scenario(G1_ROW_C)).scenario
    assert len(expanded.target.couplings) == 6
    assert expanded.target.topology is None


# ==================== Vectors ====================

def test_by_label_vectors_follow_the_labels():
    resolved = expand_scenario(load_fixture("fig6a-hex"))
    assert resolved.labels == ["A", "B", "A", "B", "A", "B"]
    assert np.allclose(resolved.vectors[1], [0.83, 1.0, 0.17, 1.0])
    assert resolved.scenario.vectors.by_label is None


def test_by_label_needs_labels():
    text = G1_ROW_C.replace(
        "[vectors]\nsets = [[1.0, 1.0, 1.0, 1.0], [0.0, 0.0, 0.0, 0.0], [1.0, 1.0, 1.0, 1.0], [0.0, 0.0, 0.0, 0.0]]",
        "[vectors.by_label]\nA = [1.0, 1.0, 1.0, 1.0]",
    )
    with pytest.raises(ConfigError, match="label"):
        expand_scenario(parse_scenario(text))


def test_vector_length_mismatch():
    text = G1_ROW_C.replace("[0.0, 0.0, 0.0, 0.0], [1.0", "[0.0, 0.0, 0.0], [1.0", 1)
    with pytest.raises(DimensionMismatchError):
        expand_scenario(parse_scenario(text))


# ==================== Circuits ====================

def test_measure_key_defaults_to_set():
    op = build_operation(OperationSpec(op="measure", set=2, basis="X"))
    assert isinstance(op, MeasureLogical)
    assert op.key == "m2"
    assert op.set_index == 1


@pytest.mark.parametrize("spec, message", [
    ({"op": "gate", "set": 1, "gate": "T"}, "T"),
    ({"op": "rz", "set": 1}, "angle"),
    ({"op": "measure", "set": 1, "basis": "w"}, "w"),
    ({"op": "teleport", "set": 1}, "teleport"),
])
def test_bad_operations(spec, message):
    with pytest.raises(ConfigError, match=message):
        build_operation(OperationSpec(**spec))


# ==================== Expectations ====================

def test_expectation_bounds():
    assert Expectation(value=1.0, tolerance=0.1).check(1.05)
    assert not Expectation(value=1.0, tolerance=0.01).check(1.05)
    assert Expectation(min=-1.2, max=-0.8).check(-1.0)
    assert not Expectation(min=1.9).check(1.5)
    assert Expectation(min=1.9).describe() == ">= 1.9"


def test_expectation_needs_a_bound():
    with pytest.raises(ValueError):
        Expectation()
