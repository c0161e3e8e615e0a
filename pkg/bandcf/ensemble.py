"""Random banded matrices with i.i.d. bounded entries along each diagonal."""

from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

import attr
import numpy as np

from .config import ENSEMBLE_SCHEMA, validate
from .const import (
    CONF_A,
    CONF_B,
    CONF_C,
    CONF_DIAGONALS,
    CONF_KIND,
    CONF_PROBABILITIES,
    CONF_SUPPORT,
    DEFAULT_JOBS,
    DEFAULT_PATH_BUDGET,
    FLOAT_TOLERANCE,
    KIND_DISCRETE,
    KIND_POINT_MASS,
    KIND_RADEMACHER,
    KIND_UNIFORM,
    LOGGER,
)
from .errors import IndexOutOfRange, InvalidInput
from .laurent_series import TruncatedLaurentSeries
from .lattice_paths import central_window, iterate_paths, label_multiset
from .models import BandParameters, PathConstraint, Ring

Diagonals = Dict[int, np.ndarray]


@attr.s(auto_attribs=True, frozen=True)
class DistributionDescriptor:
    """Bounded law of one diagonal."""

    kind: str
    c: Optional[Fraction] = None
    a: Optional[Fraction] = None
    b: Optional[Fraction] = None
    support: Tuple[Fraction, ...] = attr.ib(default=(), converter=tuple)
    probabilities: Tuple[Fraction, ...] = attr.ib(default=(), converter=tuple)

    @staticmethod
    def point_mass(c: Any) -> "DistributionDescriptor":
        """All mass at c."""
        return DistributionDescriptor(KIND_POINT_MASS, c=Fraction(c))

    @staticmethod
    def rademacher() -> "DistributionDescriptor":
        """+1 or -1 with equal probability."""
        return DistributionDescriptor(KIND_RADEMACHER)

    @staticmethod
    def uniform(a: Any, b: Any) -> "DistributionDescriptor":
        """Uniform on [a, b]."""
        return DistributionDescriptor(KIND_UNIFORM, a=Fraction(a), b=Fraction(b))

    @staticmethod
    def discrete(support: Sequence[Any], probabilities: Sequence[Any]) -> "DistributionDescriptor":
        """Finitely many atoms."""
        return DistributionDescriptor(
            KIND_DISCRETE,
            support=[Fraction(s) for s in support],
            probabilities=[Fraction(w) for w in probabilities],
        )

    def moment_of(self, r: int) -> Fraction:
        """Exact r-th moment."""

        if r < 0:
            raise IndexOutOfRange(f"Moment order must be >= 0, got {r}")
        if self.kind == KIND_POINT_MASS:
            return self.c ** r
        if self.kind == KIND_RADEMACHER:
            return Fraction(1 if r % 2 == 0 else 0)
        if self.kind == KIND_UNIFORM:
            return (self.b ** (r + 1) - self.a ** (r + 1)) / ((r + 1) * (self.b - self.a))
        return sum(
            (w * s ** r for s, w in zip(self.support, self.probabilities)), Fraction(0)
        )

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        """size independent draws as floats."""

        if self.kind == KIND_POINT_MASS:
            return np.full(size, float(self.c))
        if self.kind == KIND_RADEMACHER:
            return rng.choice(np.array([-1.0, 1.0]), size=size)
        if self.kind == KIND_UNIFORM:
            return rng.uniform(float(self.a), float(self.b), size=size)
        return rng.choice(
            np.array([float(s) for s in self.support]),
            size=size,
            p=np.array([float(w) for w in self.probabilities]),
        )

    @staticmethod
    def from_dict(data: Dict[str, Any]) -> "DistributionDescriptor":
        """Transform validated document to DistributionDescriptor."""

        kind = data[CONF_KIND]
        if kind == KIND_POINT_MASS:
            return DistributionDescriptor.point_mass(data[CONF_C])
        if kind == KIND_RADEMACHER:
            return DistributionDescriptor.rademacher()
        if kind == KIND_UNIFORM:
            return DistributionDescriptor.uniform(data[CONF_A], data[CONF_B])
        return DistributionDescriptor.discrete(data[CONF_SUPPORT], data[CONF_PROBABILITIES])

    def as_dict(self) -> Dict[str, Any]:
        """JSON form."""

        out: Dict[str, Any] = {CONF_KIND: self.kind}
        if self.kind == KIND_POINT_MASS:
            out[CONF_C] = Ring.RATIONAL.serialize(self.c)
        elif self.kind == KIND_UNIFORM:
            out[CONF_A] = Ring.RATIONAL.serialize(self.a)
            out[CONF_B] = Ring.RATIONAL.serialize(self.b)
        elif self.kind == KIND_DISCRETE:
            out[CONF_SUPPORT] = [Ring.RATIONAL.serialize(s) for s in self.support]
            out[CONF_PROBABILITIES] = [
                Ring.RATIONAL.serialize(w) for w in self.probabilities
            ]
        return out


@attr.s(auto_attribs=True, frozen=True)
class EnsembleSpec:
    """One bounded law per diagonal -p..q."""

    params: BandParameters
    diagonals: Dict[int, DistributionDescriptor]

    def __attrs_post_init__(self) -> None:
        if sorted(self.diagonals) != list(self.params.diagonals):
            raise InvalidInput(
                f"Expected one law per diagonal {list(self.params.diagonals)}"
            )

    def moment(self, k: int, r: int) -> Fraction:
        """r-th moment of diagonal k."""
        return self.diagonals[k].moment_of(r)

    @staticmethod
    def from_dict(data: Dict[str, Any]) -> "EnsembleSpec":
        """Transform document to EnsembleSpec."""

        LOGGER.debug("EnsembleSpec=%s", data)

        data = validate(ENSEMBLE_SCHEMA, data, "ensemble")
        return EnsembleSpec(
            params=BandParameters.from_dict(data),
            diagonals={
                int(k): DistributionDescriptor.from_dict(v)
                for k, v in data[CONF_DIAGONALS].items()
            },
        )

    def as_dict(self) -> Dict[str, Any]:
        """JSON form."""
        return {
            "p": self.params.p,
            "q": self.params.q,
            CONF_DIAGONALS: {str(k): self.diagonals[k].as_dict() for k in sorted(self.diagonals)},
        }


def moment_of(distribution: DistributionDescriptor, r: int) -> Fraction:
    """Exact r-th moment of a law."""
    return distribution.moment_of(r)


def _expected_sum(
    ens: EnsembleSpec,
    ell: int,
    start: int,
    constraint: PathConstraint,
    budget: int,
) -> Fraction:
    cache: Dict[Tuple, Fraction] = {}
    total = Fraction(0)
    for path in iterate_paths(ell, start, start, constraint, ens.params, budget):
        # labels on one diagonal share a law, so only (k, multiplicity) matters
        key = tuple(sorted((k, count) for (k, _), count in label_multiset(path).counts.items()))
        if key not in cache:
            value = Fraction(1)
            for k, count in key:
                value *= ens.moment(k, count)
            cache[key] = value
        total += cache[key]
    return total


def expected_weight_polynomial(
    ens: EnsembleSpec, ell: int, budget: int = DEFAULT_PATH_BUDGET
) -> Fraction:
    """E[W_(l,0,0)] from the free loops at 0."""
    return _expected_sum(ens, ell, 0, PathConstraint.free(), budget)


def exact_expected_diagonal(
    ens: EnsembleSpec, n: int, ell: int, i: int, budget: int = DEFAULT_PATH_BUDGET
) -> Fraction:
    """E[(H_n^l)_(i,i)] from the loops at i inside 0..n-1."""

    if not 0 <= i < n:
        raise IndexOutOfRange(f"Need 0 <= i <= {n - 1}, got {i}")
    return _expected_sum(ens, ell, i, PathConstraint.band(n), budget)


def exact_expected_trace(
    ens: EnsembleSpec, n: int, ell: int, budget: int = DEFAULT_PATH_BUDGET
) -> Fraction:
    """E[(1/n) Tr H_n^l].

    Indices at distance >= N from both edges all contribute the limit value.
    """

    window = central_window(ell, ens.params)
    middle = range(window, n - window)
    total = Fraction(0)
    if len(middle) > 0:
        total += len(middle) * expected_weight_polynomial(ens, ell, budget)
    for i in range(n):
        if i not in middle:
            total += exact_expected_diagonal(ens, n, ell, i, budget)
    return total / n


def expected_resolvent_series(ens: EnsembleSpec, width: int) -> TruncatedLaurentSeries:
    """sum_l E[W_(l,0,0)] z^-(l+1) to `width` coefficients."""
    return TruncatedLaurentSeries.from_powers(
        [expected_weight_polynomial(ens, ell) for ell in range(width)], Ring.RATIONAL
    )


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Stream keyed by (seed, trial)."""
    return np.random.default_rng([seed, trial])


def draw_band(ens: EnsembleSpec, n: int, rng: np.random.Generator) -> Diagonals:
    """Diagonals of one H_n sample, row-indexed: out[k][r] = H_n[r, r + k]."""

    out: Diagonals = {}
    for k in ens.params.diagonals:
        row = np.zeros(n)
        size = n - abs(k)
        if size > 0:
            values = ens.diagonals[k].sample(rng, size)
            if k >= 0:
                row[:size] = values
            else:
                row[-k:] = values
        out[k] = row
    return out


def dense(diagonals: Diagonals, n: int) -> np.ndarray:
    """Dense n x n matrix from row-indexed diagonals."""

    matrix = np.zeros((n, n))
    for k, row in diagonals.items():
        if n - abs(k) <= 0:
            continue
        values = row[: n - k] if k >= 0 else row[-k:]
        matrix += np.diag(values, k)
    return matrix


def band_product(left: Diagonals, right: Diagonals, n: int) -> Diagonals:
    """Product of two banded matrices in row-indexed diagonal form."""

    out: Dict[int, np.ndarray] = defaultdict(lambda: np.zeros(n))
    for da, a in left.items():
        if abs(da) >= n:
            continue
        for db, b in right.items():
            dc = da + db
            if abs(dc) >= n:
                continue
            if da >= 0:
                out[dc][: n - da] += a[: n - da] * b[da:]
            else:
                out[dc][-da:] += a[-da:] * b[: n + da]
    return dict(out)


def trace_moments(diagonals: Diagonals, n: int, ell_max: int, params: BandParameters) -> List[float]:
    """(1/n) Tr H_n^l for l = 0..ell_max by repeated band multiplication."""

    moments = [1.0]
    power = diagonals
    for ell in range(1, ell_max + 1):
        if ell > 1:
            power = band_product(power, diagonals, n)
        moments.append(float(power[0].sum()) / n if 0 in power else 0.0)
        remaining = ell_max - ell
        # diagonals that cannot return to 0 in the remaining steps
        power = {
            d: row
            for d, row in power.items()
            if -remaining * params.q <= d <= remaining * params.p
        }
    return moments


@attr.s(auto_attribs=True, frozen=True)
class TraceSample:
    """Per-order sample means and standard errors at one size."""

    n: int
    trials: int
    means: Tuple[float, ...] = attr.ib(converter=tuple)
    stderrs: Tuple[float, ...] = attr.ib(converter=tuple)


def _summarize(values: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    means = values.mean(axis=0)
    if values.shape[0] < 2:
        return means, np.zeros_like(means, dtype=float)
    return means, values.std(axis=0, ddof=1) / np.sqrt(values.shape[0])


def _run_trials(func: Any, trials: int, jobs: int) -> List[Any]:
    if jobs <= 1:
        return [func(t) for t in range(trials)]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(func, range(trials)))


def sample_trace_moments(
    ens: EnsembleSpec,
    n: int,
    ell_max: int,
    trials: int,
    seed: int,
    jobs: int = DEFAULT_JOBS,
) -> TraceSample:
    """Monte Carlo estimate of E[(1/n) Tr H_n^l] for l <= ell_max."""

    if n < 1 or trials < 1 or ell_max < 0:
        raise InvalidInput("Need n >= 1, trials >= 1 and ell_max >= 0")

    def trial(t: int) -> List[float]:
        return trace_moments(draw_band(ens, n, trial_rng(seed, t)), n, ell_max, ens.params)

    values = np.array(_run_trials(trial, trials, jobs))
    means, stderrs = _summarize(values)
    LOGGER.debug("Sampled n=%s trials=%s seed=%s", n, trials, seed)
    return TraceSample(n, trials, means.tolist(), stderrs.tolist())


def sample_stieltjes(
    ens: EnsembleSpec,
    n: int,
    z: complex,
    trials: int,
    seed: int,
    jobs: int = DEFAULT_JOBS,
) -> Tuple[complex, float]:
    """Mean and standard error of (1/n) Tr (zI - H_n)^-1 at a point."""

    if n < 1 or trials < 1:
        raise InvalidInput("Need n >= 1 and trials >= 1")

    def trial(t: int) -> complex:
        matrix = dense(draw_band(ens, n, trial_rng(seed, t)), n)
        resolvent = np.linalg.solve(z * np.eye(n) - matrix, np.eye(n, dtype=complex))
        return complex(np.trace(resolvent)) / n

    values = np.array(_run_trials(trial, trials, jobs))
    stderr = float(values.std(ddof=1) / np.sqrt(trials)) if trials > 1 else 0.0
    return complex(values.mean()), stderr


@attr.s(auto_attribs=True, frozen=True)
class MomentReport:
    """Estimates of one moment order across a size ladder."""

    ell: int
    sizes: Tuple[int, ...] = attr.ib(converter=tuple)
    estimates: Tuple[Tuple[float, float], ...] = attr.ib(converter=tuple)
    limit_exact: Fraction = Fraction(0)

    def __attrs_post_init__(self) -> None:
        if len(self.sizes) != len(self.estimates):
            raise InvalidInput("One estimate per size is required")

    def errors(self) -> List[float]:
        """|mean - limit| per size."""
        return [abs(mean - float(self.limit_exact)) for mean, _ in self.estimates]

    def within(self, sigmas: float) -> bool:
        """Largest size within `sigmas` standard errors of the limit."""

        mean, stderr = self.estimates[-1]
        return abs(mean - float(self.limit_exact)) <= sigmas * stderr + FLOAT_TOLERANCE

    def trend(self, sigmas: float = 2.0) -> bool:
        """Errors shrink along the ladder up to sampling noise."""

        errors = self.errors()
        for (prev, nxt), ((_, s0), (_, s1)) in zip(
            zip(errors, errors[1:]), zip(self.estimates, self.estimates[1:])
        ):
            if nxt > prev + sigmas * (s0 + s1):
                return False
        return True

    def rows(self) -> List[Dict[str, Any]]:
        """CSV rows: ell, n, mean, stderr, limit."""
        return [
            {
                "ell": self.ell,
                "n": n,
                "mean": mean,
                "stderr": stderr,
                "limit": float(self.limit_exact),
            }
            for n, (mean, stderr) in zip(self.sizes, self.estimates)
        ]

    def as_dict(self) -> Dict[str, Any]:
        """JSON form."""
        return {
            "ell": self.ell,
            "sizes": list(self.sizes),
            "estimates": [{"mean": m, "stderr": s} for m, s in self.estimates],
            "limitExact": Ring.RATIONAL.serialize(self.limit_exact),
        }


def moment_reports(
    ens: EnsembleSpec,
    ell_max: int,
    sizes: Sequence[int],
    trials: int,
    seed: int,
    jobs: int = DEFAULT_JOBS,
) -> List[MomentReport]:
    """MomentReport for every l <= ell_max, sharing one sample per size."""

    samples = [sample_trace_moments(ens, n, ell_max, trials, seed, jobs) for n in sizes]
    return [
        MomentReport(
            ell=ell,
            sizes=sizes,
            estimates=[(s.means[ell], s.stderrs[ell]) for s in samples],
            limit_exact=expected_weight_polynomial(ens, ell),
        )
        for ell in range(ell_max + 1)
    ]
