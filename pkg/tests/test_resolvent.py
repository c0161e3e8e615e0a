"""Tests for generating series and resolvent entries."""

from fractions import Fraction

import pytest

from bandcf.band_spec import BandSpec
from bandcf.errors import ExactRingRequired, IndexOutOfRange, InvalidInput
from bandcf.laurent_series import TruncatedLaurentSeries
from bandcf.lattice_paths import weight_polynomial_brute
from bandcf.models import Family, PathConstraint, Ring
from bandcf.resolvent import (
    ResolventRequest,
    characteristic_data,
    family_operator,
    relation_residuals,
    series_by_powers,
    series_matrix,
    trunc_resolvent_rational,
)

from . import load_fixture
from .conftest import distinct_spec, make_random_spec


def test_counting_series(motzkin_spec):
    assert series_by_powers(Family.A, 0, 0, 6, motzkin_spec).powers() == [1, 1, 2, 4, 9, 21]
    assert series_by_powers(Family.W, 0, 0, 6, motzkin_spec).powers() == [1, 1, 3, 7, 19, 51]
    assert series_by_powers(Family.V, -1, -1, 6, motzkin_spec).powers() == [1, 1, 2, 4, 9, 21]
    assert series_by_powers(Family.AK, 0, 0, 6, motzkin_spec, shift=3).powers() == [
        1,
        1,
        2,
        4,
        9,
        21,
    ]


@pytest.mark.parametrize("i, j", [(0, 0), (1, 0), (0, 1), (2, 1)])
def test_series_match_brute_force(window_spec, i, j):
    series = series_by_powers(Family.A, i, j, 4, window_spec)
    for ell in range(4):
        assert series.coefficient(-(ell + 1)) == weight_polynomial_brute(
            ell, i, j, PathConstraint.non_negative(), window_spec
        )


def test_truncated_block(motzkin_spec):
    pair = trunc_resolvent_rational(motzkin_spec, 2, 0, 0)
    assert pair.denominator == (0, -2, 1)
    assert pair.numerator == (-1, 1)
    assert pair.degree == 2
    assert trunc_resolvent_rational(motzkin_spec, 2, 0, 1).numerator == (1,)

    expected = series_by_powers(Family.RN, 0, 0, 6, motzkin_spec, n=2)
    assert expected.powers() == [1, 1, 2, 4, 8, 16]
    assert pair.series(6).equal_to_precision(expected)
    assert pair.as_dict()["denominator"] == ["0/1", "-2/1", "1/1"]


def test_characteristic_data(window_spec):
    data = characteristic_data(window_spec, 3)
    matrix = window_spec.truncate_h(3)
    trace = sum(matrix[r][r] for r in range(3))
    assert data.denominator[3] == 1
    assert data.denominator[2] == -trace
    for i in range(3):
        for j in range(3):
            assert data.pair(i, j).series(5).equal_to_precision(
                series_by_powers(Family.RN, i, j, 5, window_spec, n=3)
            )


def test_truncated_errors(motzkin_spec):
    complex_spec = BandSpec.from_dict(load_fixture("spec_complex.json"))
    with pytest.raises(ExactRingRequired):
        characteristic_data(complex_spec, 2)
    with pytest.raises(IndexOutOfRange):
        trunc_resolvent_rational(motzkin_spec, 2, 2, 0)


def test_operator_arguments(motzkin_spec):
    with pytest.raises(IndexOutOfRange):
        family_operator(Family.V, 0, -1, 4, motzkin_spec)
    with pytest.raises(IndexOutOfRange):
        family_operator(Family.A, -1, 0, 4, motzkin_spec)
    with pytest.raises(IndexOutOfRange):
        family_operator(Family.RN, 0, 0, 4, motzkin_spec)
    with pytest.raises(IndexOutOfRange):
        family_operator(Family.RN, 3, 0, 4, motzkin_spec, n=3)
    with pytest.raises(InvalidInput):
        series_by_powers(Family.A, 0, 0, 0, motzkin_spec)


def test_parse_family():
    assert ResolventRequest.parse_family("ak:2") == (Family.AK, 2, None)
    assert ResolventRequest.parse_family("rn:3") == (Family.RN, 0, 3)
    assert ResolventRequest.parse_family("zeta") == (Family.ZETA, 0, None)
    for text in ("x", "rn", "ak:-1"):
        with pytest.raises(InvalidInput):
            ResolventRequest.parse_family(text)


def test_request(motzkin_spec):
    request = ResolventRequest(Family.RN, 0, 0, 4, n=2)
    assert request.series(motzkin_spec).powers() == [1, 1, 2, 4]


@pytest.mark.parametrize("seed, p, q", [(1, 1, 1), (2, 2, 1), (3, 1, 2), (4, 2, 2)])
def test_corner_equals_two_sided(seed, p, q):
    spec = make_random_spec(seed, p, q)
    corner = series_matrix(Family.ZETA, q, p, 8, spec)
    two_sided = series_matrix(Family.W, q, p, 8, spec)
    assert corner.equal_to_precision(two_sided)


def test_reflected_below():
    spec = make_random_spec(5, 2, 3)
    mirrored = spec.reflect()
    for a in (1, 2):
        for b in (1, 3):
            assert series_by_powers(Family.V, -a, -b, 6, spec).equal_to_precision(
                series_by_powers(Family.A, b - 1, a - 1, 6, mirrored)
            )


@pytest.mark.parametrize("seed, p, q", [(6, 1, 1), (7, 2, 1), (8, 1, 3)])
def test_relations_hold(seed, p, q):
    report = relation_residuals(make_random_spec(seed, p, q), 8, 2)
    assert report.passed
    assert set(report.residuals) == {
        "reciprocal",
        "first_row",
        "first_column",
        "cross_ratio",
        "column_recurrence",
        "row_recurrence",
    }


def test_relations_catch_corruption():
    spec = distinct_spec(2, 1)
    original = series_by_powers(Family.AK, 0, 0, 8, spec, shift=1)
    bumped = original + TruncatedLaurentSeries.monomial(Fraction(1, 3), -3, Ring.RATIONAL, -8)
    report = relation_residuals(spec, 8, 2, shifted={(0, 0): bumped})
    assert not report.passed
    assert report.residuals["reciprocal"] != 0
