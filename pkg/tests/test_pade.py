"""Tests for the contact order of truncated resolvents."""

import pytest

from bandcf.errors import IndexOutOfRange, InvalidInput
from bandcf.pade import (
    ContactReport,
    ContactSweep,
    contact_order,
    contact_sweep,
    default_width,
    predicted_l,
)

from .conftest import make_random_spec


def test_predicted_l():
    assert predicted_l(5, 0, 0, 1, 1) == 9
    assert predicted_l(10, 1, 2, 2, 3) == 6
    assert predicted_l(1, 0, 0, 3, 2) == 1
    assert default_width(5, 1, 1) == 12
    with pytest.raises(IndexOutOfRange):
        predicted_l(3, 3, 0, 1, 1)


def test_motzkin_contact(motzkin_spec):
    report = contact_order(motzkin_spec, 2, 0, 0, 6)
    assert report.predicted_l == 3
    assert report.observed_match == 4
    assert report.slack == 0
    assert report.passed
    assert report.strict_at_next
    assert report.as_dict() == {
        "n": 2,
        "i": 0,
        "j": 0,
        "width": 6,
        "predictedL": 3,
        "observedMatch": 4,
        "strictAtNext": True,
    }

    single = contact_order(motzkin_spec, 1, 0, 0, 3)
    assert (single.predicted_l, single.observed_match, single.strict_at_next) == (1, 2, True)


def test_strictness_beyond_width(motzkin_spec):
    report = contact_order(motzkin_spec, 2, 0, 0, 4)
    assert report.observed_match == 4
    assert not report.strict_at_next


def test_contact_arguments(motzkin_spec):
    with pytest.raises(InvalidInput):
        contact_order(motzkin_spec, 2, 0, 0, 3)
    with pytest.raises(IndexOutOfRange):
        contact_order(motzkin_spec, 0, 0, 0, 3)


@pytest.mark.parametrize("seed, p, q", [(41, 1, 1), (42, 2, 1), (43, 1, 2), (44, 3, 2)])
def test_bound_holds(seed, p, q):
    spec = make_random_spec(seed, p, q)
    for n in range(1, 5):
        sweep = contact_sweep(spec, n)
        assert len(sweep.reports) == n * n
        assert sweep.violations == 0
        assert sweep.min_slack >= 0
        assert 0.0 <= sweep.strict_fraction <= 1.0


def test_empty_sweep():
    sweep = ContactSweep(3, [])
    assert sweep.min_slack is None
    assert sweep.strict_fraction == 0.0
    assert sweep.violations == 0


def test_failed_report():
    report = ContactReport(3, 0, 0, 8, 5, 4, False)
    assert report.slack == -2
    assert not report.passed
