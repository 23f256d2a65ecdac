"""Bundled example schemas, consistency instances and benchmark grids."""

from __future__ import annotations

import json
from importlib import resources

from .bench import BenchParams, load_grid_doc
from .consistency import CcInstance, load_cc_doc
from .model import Policy, Schema, load_schema_doc

EXAMPLE_NAMES = ("example0", "example1", "example2")
GRID_NAMES = ("table2", "table3")


def _read(name: str) -> object:
    text = resources.files("schemacut.data").joinpath(f"{name}.json").read_text("utf-8")
    return json.loads(text)


def fixture_path(name: str):
    """Filesystem path of a bundled fixture (for CLI round trips in tests)."""
    return resources.files("schemacut.data").joinpath(f"{name}.json")


def example_schema(name: str) -> tuple[Schema, Policy]:
    if name not in EXAMPLE_NAMES:
        raise KeyError(f"unknown example {name!r}")
    return load_schema_doc(_read(name))


def cc_instance(number: int) -> CcInstance:
    if number not in (1, 2):
        raise KeyError("instance number must be 1 or 2")
    return load_cc_doc(_read(f"cc{number}"))


def bench_grid(name: str) -> tuple[list[str], list[BenchParams]]:
    if name not in GRID_NAMES:
        raise KeyError(f"unknown grid {name!r}")
    return load_grid_doc(_read(name))
