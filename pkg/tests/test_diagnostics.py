"""Tests for report rendering."""

from fractions import Fraction
import json

import pytest

from bandcf.diagnostics import (
    check_lines,
    envelope,
    format_float,
    render_csv,
    render_json,
    render_table,
    series_payload,
)
from bandcf.laurent_series import TruncatedLaurentSeries
from bandcf.models import Ring


def test_format_float():
    assert format_float(0.1) == "0.10000000000000001"
    assert format_float(1.0) == "1.0"
    assert format_float(-2.5) == "-2.5"
    assert format_float(1e20) == "1e+20"
    assert format_float(float("nan")) == '"nan"'
    assert format_float(float("inf")) == '"inf"'


def test_render_json_layout():
    document = {"a": 1, "b": [1.5, Fraction(1, 2)], "c": {}, "d": [], "e": None, "f": True}
    assert render_json(document) == (
        "{\n"
        '  "a": 1,\n'
        '  "b": [\n'
        "    1.5,\n"
        '    "1/2"\n'
        "  ],\n"
        '  "c": {},\n'
        '  "d": [],\n'
        '  "e": null,\n'
        '  "f": true\n'
        "}\n"
    )
    assert render_json({"z": 1j}) == '{\n  "z": [\n    0.0,\n    1.0\n  ]\n}\n'
    with pytest.raises(TypeError):
        render_json({"x": object()})


def test_render_json_floats():
    document = {1: [0.1, 1e20, -2.0], "nan": float("nan"), "inf": float("-inf"), "s": "x\"y"}
    text = render_json(document)
    assert text == (
        "{\n"
        '  "1": [\n'
        "    0.10000000000000001,\n"
        "    1e+20,\n"
        "    -2.0\n"
        "  ],\n"
        '  "nan": "nan",\n'
        '  "inf": "-inf",\n'
        '  "s": "x\\"y"\n'
        "}\n"
    )
    assert json.loads(text)["1"] == [0.1, 1e20, -2.0]


def test_envelope():
    assert envelope("paths", {"count": 2}) == {
        "schema": "bandcf/1",
        "command": "paths",
        "count": 2,
    }


def test_csv_and_table():
    rows = [{"n": 1, "mean": 0.5, "label": "a,b"}]
    assert render_csv(rows, ["n", "mean", "label"]) == 'n,mean,label\n1,0.5,"a,b"\n'
    assert render_table(["a", "bb"], [(1, 0.5)]) == "a  bb\n-  ---\n1  0.5\n"


def test_series_payload():
    series = TruncatedLaurentSeries.from_powers([1, 0], Ring.RATIONAL)
    assert series_payload(series) == {
        "hi": -1,
        "prec": -2,
        "coeffs": ["1/1", "0/1"],
        "text": "1·z^-1 + O(z^-3)",
    }


def test_check_lines():
    text = check_lines([{"name": "limit", "passed": False, "residual": 0.25}, {"name": "x", "passed": True}])
    lines = text.splitlines()
    assert lines[0].split() == ["status", "check", "residual"]
    assert lines[2].split() == ["FAIL", "limit", "0.25"]
    assert lines[3].split() == ["PASS", "x"]
