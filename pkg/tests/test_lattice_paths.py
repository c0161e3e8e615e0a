"""Tests for lattice path enumeration and weights."""

from collections import Counter
from fractions import Fraction
import math

from hypothesis import given, strategies as st
import pytest

from bandcf.errors import BudgetExceeded, IndexOutOfRange, InvalidInput, WindowMiss
from bandcf.lattice_paths import (
    LatticePath,
    central_window,
    collection_summary,
    enumerate_paths,
    height_bounds,
    height_range,
    label_multiset,
    path_weight,
    paths_as_rows,
    reflect_path,
    weight_polynomial_brute,
)
from bandcf.models import BandParameters, PathConstraint
from bandcf.pade import predicted_l

from .conftest import distinct_spec

TRIDIAGONAL = BandParameters(1, 1)

MOTZKIN = [1, 1, 2, 4, 9, 21]
CENTRAL_TRINOMIAL = [1, 1, 3, 7, 19, 51]


@pytest.mark.parametrize("length", range(6))
def test_motzkin_counts(length):
    paths = enumerate_paths(length, 0, 0, PathConstraint.non_negative(), TRIDIAGONAL)
    assert len(paths) == MOTZKIN[length]

    below = enumerate_paths(length, -1, -1, PathConstraint.below_minus_one(), TRIDIAGONAL)
    assert len(below) == MOTZKIN[length]


@pytest.mark.parametrize("length", range(6))
def test_free_counts(length):
    paths = enumerate_paths(length, 0, 0, PathConstraint.free(), TRIDIAGONAL)
    assert len(paths) == CENTRAL_TRINOMIAL[length]


def test_strip_counts():
    strip = PathConstraint.band(2)
    assert len(enumerate_paths(2, 0, 0, strip, TRIDIAGONAL)) == 2
    assert len(enumerate_paths(3, 0, 0, strip, TRIDIAGONAL)) == 4


def test_canonical_order():
    paths = enumerate_paths(2, 0, 0, PathConstraint.free(), TRIDIAGONAL)
    assert [p.heights for p in paths] == [(0, -1, 0), (0, 0, 0), (0, 1, 0)]


def test_edge_cases():
    free = PathConstraint.free()
    assert enumerate_paths(1, 0, 3, free, TRIDIAGONAL) == []
    assert enumerate_paths(-1, 0, 0, free, TRIDIAGONAL) == []
    with pytest.raises(IndexOutOfRange):
        enumerate_paths(2, -1, 0, PathConstraint.non_negative(), TRIDIAGONAL)
    with pytest.raises(BudgetExceeded):
        enumerate_paths(6, 0, 0, free, TRIDIAGONAL, budget=5)


def test_path_weight(window_spec):
    assert path_weight(LatticePath([1, 2, 0]), window_spec) == -3
    assert path_weight(LatticePath([4]), window_spec) == 1


def test_weight_polynomial(motzkin_spec, window_spec):
    assert weight_polynomial_brute(4, 0, 0, PathConstraint.non_negative(), motzkin_spec) == 9
    assert collection_summary(2, 0, 0, PathConstraint.non_negative(), window_spec) == (
        2,
        Fraction(-2) * Fraction(-2) + Fraction(1) * Fraction(3),
    )
    with pytest.raises(WindowMiss):
        collection_summary(6, 0, 0, PathConstraint.free(), window_spec)


def test_labels():
    path = LatticePath.parse("0,1,0,1")
    labels = label_multiset(path)
    assert labels.counts == {(-1, 0): 1, (1, 0): 2}
    assert labels.total == 3
    assert height_range(path) == (0, 1)
    assert str(path) == "0,1,0,1"
    with pytest.raises(InvalidInput):
        LatticePath.parse("0,x")
    with pytest.raises(InvalidInput):
        LatticePath([])


def test_bounds():
    assert height_bounds(2, 0, 0, TRIDIAGONAL) == (-1, 1)
    assert height_bounds(1, 0, 3, TRIDIAGONAL) is None
    assert height_bounds(3, 0, 0, BandParameters(2, 1)) == (-2, 2)
    assert central_window(2, TRIDIAGONAL) == 3
    assert central_window(4, BandParameters(2, 1)) == 5


def test_rows(motzkin_spec):
    paths = enumerate_paths(2, 0, 0, PathConstraint.non_negative(), TRIDIAGONAL)
    assert paths_as_rows(paths) == [{"heights": [0, 0, 0]}, {"heights": [0, 1, 0]}]
    assert paths_as_rows(paths, motzkin_spec)[1]["weight"] == "1/1"


@given(
    st.integers(-5, 5),
    st.lists(st.integers(-2, 1), max_size=6),
)
def test_reflection_keeps_weight(start, steps):
    spec = distinct_spec(2, 1)
    heights = [start]
    for step in steps:
        heights.append(heights[-1] + step)
    path = LatticePath(heights)
    mirrored = reflect_path(path)

    assert mirrored.is_legal(spec.params)
    assert label_multiset(mirrored).total == path.length
    assert path_weight(mirrored, spec.reflect()) == path_weight(path, spec)


@pytest.mark.parametrize("params", [TRIDIAGONAL, BandParameters(2, 1), BandParameters(1, 2)])
def test_constraints_nest(params):
    for length in range(6):
        for i in range(3):
            for j in range(3):
                strip = {
                    p.heights
                    for p in enumerate_paths(length, i, j, PathConstraint.band(4), params)
                }
                upper = {
                    p.heights
                    for p in enumerate_paths(length, i, j, PathConstraint.non_negative(), params)
                }
                free = {
                    p.heights for p in enumerate_paths(length, i, j, PathConstraint.free(), params)
                }
                assert strip <= upper <= free


@pytest.mark.parametrize(
    "params", [TRIDIAGONAL, BandParameters(2, 1), BandParameters(1, 2), BandParameters(2, 2)]
)
@pytest.mark.parametrize("n", [1, 2, 3])
def test_short_paths_stay_in_strip(params, n):
    for i in range(n):
        for j in range(n):
            for length in range(predicted_l(n, i, j, params.p, params.q) + 1):
                strip = enumerate_paths(length, i, j, PathConstraint.band(n), params)
                upper = enumerate_paths(length, i, j, PathConstraint.non_negative(), params)
                assert strip == upper


def test_first_long_path_leaves_strip():
    length = predicted_l(2, 0, 0, 1, 1) + 1
    strip = enumerate_paths(length, 0, 0, PathConstraint.band(2), TRIDIAGONAL)
    upper = enumerate_paths(length, 0, 0, PathConstraint.non_negative(), TRIDIAGONAL)
    assert (len(strip), len(upper)) == (8, 9)


@pytest.mark.parametrize("params", [TRIDIAGONAL, BandParameters(2, 1), BandParameters(1, 2)])
@pytest.mark.parametrize("ell", range(5))
def test_central_window_loops(params, ell):
    window = central_window(ell, params)
    n = 2 * window + 3
    free = enumerate_paths(ell, 0, 0, PathConstraint.free(), params)
    for i in range(window, n - window):
        strip = enumerate_paths(ell, i, i, PathConstraint.band(n), params)
        assert {p.heights for p in strip} == {p.shifted(i).heights for p in free}


ONE_SIDED_PATH = [0, 1, 3, 1, 4, 1, 0, 2, 3, 3, 4, 0, 2, 1, 0, 3, 1, 2, 3]
ONE_SIDED_LABELS = [
    (1, 0), (2, 1), (-2, 1), (3, 1), (-3, 1), (-1, 0), (2, 0), (1, 2), (0, 3),
    (1, 3), (-4, 0), (2, 0), (-1, 1), (-1, 0), (3, 0), (-2, 1), (1, 1), (1, 2),
]
TWO_SIDED_PATH = [-1, -2, -1, 2, 2, -2, 0, -1, 1, 3, 2, -1, -1, -2, 1, 0, -2, 1, 2]
TWO_SIDED_LABELS = [
    (-1, -2), (1, -2), (3, -1), (0, 2), (-4, -2), (2, -2), (-1, -1), (2, -1), (2, 1),
    (-1, 2), (-3, -1), (0, -1), (-1, -2), (3, -2), (-1, 0), (-2, -2), (3, -2), (1, 1),
]


@pytest.mark.parametrize(
    "heights, labels",
    [(ONE_SIDED_PATH, ONE_SIDED_LABELS), (TWO_SIDED_PATH, TWO_SIDED_LABELS)],
)
def test_worked_paths(heights, labels):
    spec = distinct_spec(4, 3)
    path = LatticePath(heights)

    assert path.is_legal(spec.params)
    assert label_multiset(path).counts == dict(Counter(labels))
    assert label_multiset(path).total == 18
    expected = math.prod(spec.coefficient(k, m) for k, m in labels)
    assert path_weight(path, spec) == expected
    assert label_multiset(path).weight(spec) == expected


def test_worked_path_ranges():
    assert height_range(LatticePath(ONE_SIDED_PATH)) == (0, 4)
    assert height_range(LatticePath(TWO_SIDED_PATH)) == (-2, 3)
