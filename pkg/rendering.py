"""
Jinja2 environment for the plain-text exports under templates/.
"""

from functools import lru_cache
from typing import Any

from jinja2 import Environment, FileSystemLoader, StrictUndefined

from config import TEMPLATES_DIR


def _fixed(value: float, digits: int = 6) -> str:
    return f"{value:.{digits}f}"


def _one_based(values) -> str:
    return " ".join(str(v + 1) for v in values)


@lru_cache(maxsize=1)
def get_environment() -> Environment:
    env = Environment(
        loader=FileSystemLoader(str(TEMPLATES_DIR)),
        undefined=StrictUndefined,
        trim_blocks=True,
        lstrip_blocks=True,
        keep_trailing_newline=True,
    )
    env.filters["fixed"] = _fixed
    env.filters["one_based"] = _one_based
    return env


def render(template_name: str, **context: Any) -> str:
    """Render a template from the templates directory."""
    return get_environment().get_template(template_name).render(**context)


__all__ = ["get_environment", "render"]
