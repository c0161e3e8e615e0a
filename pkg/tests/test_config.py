"""Tests for input schemas."""

from fractions import Fraction

import pytest

from bandcf.config import (
    DISTRIBUTION_SCHEMA,
    ENSEMBLE_SCHEMA,
    SPEC_SCHEMA,
    SUITE_OPTIONS,
    load_document,
    validate,
)
from bandcf.const import SUITE_MOMENT_LIMIT, SUITE_PATH_ORACLE, SUITE_RELATIONS
from bandcf.errors import InvalidInput

from . import fixture_path, load_fixture


def test_spec_defaults():
    data = validate(SPEC_SCHEMA, load_fixture("spec_motzkin.json"), "spec")
    assert data["diagonals"]["0"] == {"lo": 0, "values": [], "default": 1}

    data = validate(SPEC_SCHEMA, load_fixture("spec_window.json"), "spec")
    assert data["ring"] == "rational"


def test_spec_needs_every_diagonal():
    document = load_fixture("spec_motzkin.json")
    del document["diagonals"]["1"]
    with pytest.raises(InvalidInput):
        validate(SPEC_SCHEMA, document, "spec")


def test_spec_rejects_unknown_ring():
    document = load_fixture("spec_motzkin.json")
    document["ring"] = "real"
    with pytest.raises(InvalidInput):
        validate(SPEC_SCHEMA, document, "spec")


def test_distributions():
    assert validate(DISTRIBUTION_SCHEMA, {"kind": "uniform", "a": "1/2", "b": 1}, "law")[
        "a"
    ] == Fraction(1, 2)
    with pytest.raises(InvalidInput):
        validate(DISTRIBUTION_SCHEMA, {"kind": "uniform", "a": 1, "b": 0}, "law")
    with pytest.raises(InvalidInput):
        validate(
            DISTRIBUTION_SCHEMA,
            {"kind": "discrete", "support": [0, 1], "probabilities": ["1/2", "1/3"]},
            "law",
        )
    with pytest.raises(InvalidInput):
        validate(DISTRIBUTION_SCHEMA, {"kind": "gaussian"}, "law")


def test_ensemble_schema():
    data = validate(ENSEMBLE_SCHEMA, load_fixture("ensemble_discrete.json"), "ensemble")
    assert data["diagonals"]["-1"]["probabilities"] == [Fraction(2, 3), Fraction(1, 3)]


def test_suite_defaults():
    options = validate(SUITE_OPTIONS[SUITE_RELATIONS], {"max_n": 3}, "options")
    assert options == {"seed": 0, "trials": 20, "width": 10, "max_idx": 3}

    options = validate(SUITE_OPTIONS[SUITE_PATH_ORACLE], {}, "options")
    assert options["max_len"] == 7

    options = validate(SUITE_OPTIONS[SUITE_MOMENT_LIMIT], {"sizes": [10]}, "options")
    assert options["sizes"] == [10]
    assert options["jobs"] == 1
    assert options["sigmas"] == 5.0

    with pytest.raises(InvalidInput):
        validate(SUITE_OPTIONS[SUITE_RELATIONS], {"trials": 0}, "options")


def test_load_document(tmp_path):
    assert load_document(fixture_path("spec_motzkin.json"))["p"] == 1

    broken = tmp_path / "broken.json"
    broken.write_text("{", encoding="utf-8")
    with pytest.raises(InvalidInput):
        load_document(str(broken))
    with pytest.raises(InvalidInput):
        load_document(str(tmp_path / "missing.json"))
