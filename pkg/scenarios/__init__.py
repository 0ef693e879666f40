"""
Scenario files: TOML models, I/O, preset expansion and the fixture library.
"""

from scenarios.models import (
    Command,
    Expectation,
    GroupingSpec,
    LayoutSpec,
    OperationSpec,
    RunOptions,
    Scenario,
    TargetSpec,
    TrotterSpec,
    VectorsSpec,
)
from scenarios.loader import (
    dump_scenario,
    list_fixtures,
    load_fixture,
    load_scenario,
    parse_scenario,
    save_scenario,
    to_toml_value,
)
from scenarios.expand import (
    MEASUREMENT_BASES,
    TOPOLOGIES,
    ResolvedScenario,
    build_circuit,
    expand_scenario,
    set_centroids,
)

__all__ = [
    "Command",
    "Expectation",
    "GroupingSpec",
    "LayoutSpec",
    "OperationSpec",
    "RunOptions",
    "Scenario",
    "TargetSpec",
    "TrotterSpec",
    "VectorsSpec",
    "dump_scenario",
    "list_fixtures",
    "load_fixture",
    "load_scenario",
    "parse_scenario",
    "save_scenario",
    "to_toml_value",
    "MEASUREMENT_BASES",
    "TOPOLOGIES",
    "ResolvedScenario",
    "build_circuit",
    "expand_scenario",
    "set_centroids",
]
