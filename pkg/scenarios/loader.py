"""
Scenario TOML I/O.

Files are read with tomllib and written with tomli-w. dump_scenario emits
the canonical form (declared field order, unset optionals dropped), so
dump(parse(dump(s))) == dump(s) byte for byte.
"""

from enum import Enum
from pathlib import Path
from typing import Any, List, Optional, Union
import logging
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

import numpy as np
import tomli_w
from pydantic import ValidationError

from errors import ScenarioError
from scenarios.models import Scenario

logger = logging.getLogger(__name__)


def to_toml_value(value: Any) -> Any:
    """Plain TOML-serializable copy: None keys dropped, enums as values, tuples and arrays as lists."""
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {str(k): to_toml_value(v) for k, v in value.items() if v is not None}
    if isinstance(value, (list, tuple, np.ndarray)):
        return ["none" if v is None else to_toml_value(v) for v in value]
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    return value


def _validation_detail(exc: ValidationError) -> str:
    problems = []
    for error in exc.errors():
        where = ".".join(str(part) for part in error["loc"]) or "<root>"
        problems.append(f"{where}: {error['msg']}")
    return "; ".join(problems)


def parse_scenario(text: str, source: str = "<string>") -> Scenario:
    """Parse scenario TOML text; any problem raises ScenarioError (exit 2)."""
    try:
        raw = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ScenarioError(source, f"malformed TOML ({exc})") from exc
    try:
        return Scenario.model_validate(raw)
    except ValidationError as exc:
        raise ScenarioError(source, _validation_detail(exc)) from exc


def load_scenario(path: Union[str, Path]) -> Scenario:
    path = Path(path)
    if not path.is_file():
        raise ScenarioError(str(path), "no such scenario file")
    scenario = parse_scenario(path.read_text(encoding="utf-8"), source=str(path))
    logger.debug(f"load_scenario | {path} | name={scenario.name} | command={scenario.command.value}")
    return scenario


def dump_scenario(scenario: Scenario) -> str:
    """Canonical TOML text of a scenario."""
    return tomli_w.dumps(to_toml_value(scenario.model_dump(exclude_none=True)))


def save_scenario(scenario: Scenario, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dump_scenario(scenario), encoding="utf-8")
    return path


def list_fixtures(directory: Optional[Union[str, Path]] = None, settings=None) -> List[Path]:
    """Fixture files of a library directory, sorted by name."""
    if directory is None:
        if settings is None:
            from settings import settings
        directory = settings.fixtures_path
    directory = Path(directory)
    if not directory.is_dir():
        raise ScenarioError(str(directory), "fixture directory does not exist")
    return sorted(directory.glob("*.toml"))


def load_fixture(name: str, settings=None) -> Scenario:
    """Load a bundled fixture by scenario name."""
    for path in list_fixtures(settings=settings):
        if path.stem == name:
            return load_scenario(path)
    raise ScenarioError(name, "no bundled fixture with this name")


__all__ = [
    "to_toml_value",
    "parse_scenario",
    "load_scenario",
    "dump_scenario",
    "save_scenario",
    "list_fixtures",
    "load_fixture",
]
