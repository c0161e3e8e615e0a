"""Tests for the bandcf package."""

import json
import os
from typing import Any

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


def fixture_path(name: str) -> str:
    """Absolute path of a fixture file."""
    return os.path.join(FIXTURES, name)


def load_fixture(name: str) -> Any:
    """Parsed JSON fixture."""
    with open(fixture_path(name), encoding="utf-8") as handle:
        return json.load(handle)
