"""Tests for the verification suites."""

import numpy as np
import pytest

from bandcf.const import SUITE_ALIASES, SUITES
from bandcf.errors import InvalidInput, UnknownSuite
from bandcf.models import BandParameters
from bandcf.verify import (
    MAX_BAND,
    SUITE_RUNNERS,
    CheckResult,
    SuiteReport,
    random_ensemble,
    random_spec,
    run_suite,
    run_verify,
    suite_name,
    zero_tail_bound,
)

SMALL_OPTIONS = {
    "theorem1": {"trials": 2, "width": 6, "max_idx": 2},
    "theorem2": {"trials": 3, "max_len": 4, "max_idx": 2},
    "theorem51": {"trials": 2, "width": 6},
    "theorem62": {"trials": 2, "width": 6, "levels": 2},
    "theorem64": {"trials": 2, "width": 6, "levels": 2, "depth": 3},
    "prop65": {"trials": 2, "width": 6, "levels": 2},
    "theorem73": {"trials": 2, "max_n": 3},
    "prop74": {"trials": 2, "width": 6, "max_n": 3},
    "prop75": {"trials": 1, "ell_max": 2},
}


def test_every_suite_is_registered():
    assert list(SUITE_RUNNERS) == SUITES


@pytest.mark.parametrize("suite", sorted(SMALL_OPTIONS))
def test_suite_passes(suite):
    report = run_suite(suite, {**SMALL_OPTIONS[suite], "seed": 5})
    assert report.suite == suite
    assert report.checks
    assert report.failures == []
    assert report.passed


def test_fold_names():
    report = run_suite("theorem62", SMALL_OPTIONS["theorem62"])
    names = {check.name for check in report.checks}
    assert names == {"t_of_f", "alpha_fold", "alpha_zero_tail_prefix"}
    prefix = [c for c in report.checks if c.name == "alpha_zero_tail_prefix"]
    assert all(isinstance(c.residual, int) and c.residual >= 0 for c in prefix)


def test_moment_limit():
    report = run_suite(
        "theorem81", {"trials": 30, "sizes": [20, 40], "ell_max": 2, "seed": 1, "jobs": 2}
    )
    names = [check.name for check in report.checks]
    assert names.count("limit") == 3
    assert names.count("trend") == 3
    assert names.count("finite_mean") == 6
    assert all(c.passed for c in report.checks if c.name != "trend")


def test_options_are_resolved():
    report = run_suite("theorem1", {"trials": 1, "unused": True, "jobs": 4})
    assert report.options == {"seed": 0, "trials": 1, "width": 10, "max_idx": 3}
    assert report.as_dict()["suite"] == "theorem1"

    with pytest.raises(InvalidInput):
        run_suite("theorem1", {"width": 0})
    with pytest.raises(UnknownSuite):
        run_suite("nope")
    with pytest.raises(UnknownSuite):
        run_suite("all")


def test_run_verify_single():
    reports = run_verify("prop75", {"trials": 1, "ell_max": 1})
    assert [r.suite for r in reports] == ["prop75"]


def test_results_as_dict():
    check = CheckResult("x", True, {"n": 1})
    assert check.as_dict() == {"name": "x", "passed": True, "params": {"n": 1}}
    failed = CheckResult("y", False, residual=[3])
    report = SuiteReport("s", {}, [check, failed])
    assert not report.passed
    assert report.failures == [failed]
    assert report.as_dict()["checks"][1]["residual"] == [3]


def test_random_inputs():
    rng = np.random.default_rng(0)
    for _ in range(10):
        spec = random_spec(rng, 5)
        assert 1 <= spec.p <= MAX_BAND and 1 <= spec.q <= MAX_BAND
        assert spec.window(0).lo == -5

    fixed = random_spec(rng, 3, BandParameters(2, 1))
    assert fixed.params == BandParameters(2, 1)

    ens = random_ensemble(rng, BandParameters(1, 2))
    assert sorted(ens.diagonals) == [-1, 0, 1, 2]
    assert all(ens.moment(k, 0) == 1 for k in ens.diagonals)


def test_suite_names():
    assert SUITES == [
        "theorem1",
        "theorem2",
        "theorem51",
        "theorem62",
        "theorem64",
        "prop65",
        "theorem73",
        "prop74",
        "prop75",
        "theorem81",
    ]
    assert suite_name("path-oracle") == "theorem2"
    assert suite_name("theorem2") == "theorem2"
    assert suite_name("all") == "all"
    assert set(SUITE_ALIASES.values()) == set(SUITES)
    with pytest.raises(UnknownSuite):
        suite_name("theorem3")


def test_alias_reports_canonical_name():
    report = run_suite("one-sided-cf", SMALL_OPTIONS["theorem62"])
    assert report.suite == "theorem62"
    assert report.passed


def test_zero_tail_bound():
    assert zero_tail_bound(3, 1, 1) == 6
    assert zero_tail_bound(3, 2, 1) == 4
    assert zero_tail_bound(4, 2, 3) == 3


def test_zero_tail_prefix_reaches_bound():
    report = run_suite("theorem62", {"trials": 3, "width": 8, "levels": 3, "seed": 2})
    prefix = [c for c in report.checks if c.name == "alpha_zero_tail_prefix"]
    assert len(prefix) == 3
    for check in prefix:
        assert check.passed
        assert check.params["bound"] == zero_tail_bound(3, check.params["p"], check.params["q"])


def test_zero_tail_prefix_can_fail(monkeypatch):
    monkeypatch.setattr("bandcf.verify.agreement_depth", lambda approx, target: 0)
    report = run_suite("theorem62", {"trials": 2, "width": 10, "levels": 3})
    prefix = [c for c in report.checks if c.name == "alpha_zero_tail_prefix"]
    assert prefix
    assert not any(c.passed for c in prefix)
    assert not report.passed


def test_jobs_is_scoped_to_moment_limit():
    report = run_suite("theorem81", {"trials": 4, "sizes": [10], "ell_max": 1, "jobs": 3})
    assert report.options["jobs"] == 3
    assert "jobs" not in run_suite("theorem73", {"trials": 1, "max_n": 2}).options
