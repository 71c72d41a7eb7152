"""Paths to the example data files shipped with the package."""

from __future__ import annotations

from importlib.resources import files
from pathlib import Path

from .errors import ConfigError

BUNDLED_FILES = (
    "field.json",
    "dual_numbers.json",
    "mat2.json",
    "lax_deg1.json",
    "lax_deg2.json",
)


def bundled_path(name: str) -> Path:
    """Filesystem path of a bundled example file."""
    if name not in BUNDLED_FILES:
        raise ConfigError(f"no bundled file named {name!r}; have {BUNDLED_FILES}")
    return Path(str(files("operadics").joinpath("data", name)))
