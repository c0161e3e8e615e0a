"""Shared fixtures."""

from fractions import Fraction

import numpy as np
import pytest

from bandcf.band_spec import BandSpec
from bandcf.ensemble import EnsembleSpec
from bandcf.models import BandParameters

from . import load_fixture


@pytest.fixture
def motzkin_spec() -> BandSpec:
    """Tridiagonal, every coefficient 1."""
    return BandSpec.from_dict(load_fixture("spec_motzkin.json"))


@pytest.fixture
def window_spec() -> BandSpec:
    """p = 2, q = 1 with finite windows on -2..3."""
    return BandSpec.from_dict(load_fixture("spec_window.json"))


@pytest.fixture
def uniform_ensemble() -> EnsembleSpec:
    """Tridiagonal, uniform(0, 1) on every diagonal."""
    return EnsembleSpec.from_dict(load_fixture("ensemble_uniform.json"))


@pytest.fixture
def mixed_ensemble() -> EnsembleSpec:
    """Uniform main diagonal, Rademacher off the diagonal."""
    return EnsembleSpec.from_dict(load_fixture("ensemble_mixed.json"))


def make_random_spec(seed: int, p: int, q: int, radius: int = 30) -> BandSpec:
    """Seeded rational spec on -radius..radius."""
    return BandSpec.random(BandParameters(p, q), np.random.default_rng(seed), -radius, radius)


def distinct_spec(p: int, q: int, radius: int = 20) -> BandSpec:
    """Spec whose coefficients differ label by label."""
    return BandSpec.from_function(
        BandParameters(p, q),
        lambda k, n: Fraction(3 * n + 5 * k + 1, 7),
        -radius,
        radius,
    )
