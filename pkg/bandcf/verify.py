"""Named verification suites and their pass/fail reports."""

from fractions import Fraction
from typing import Any, Callable, Dict, List, Mapping, Optional, Tuple

import attr
import numpy as np

from .band_spec import BandSpec
from .config import SUITE_OPTIONS, validate
from .const import (
    CONF_DEPTH,
    CONF_ELL_MAX,
    CONF_ENSEMBLE,
    CONF_JOBS,
    CONF_LEVELS,
    CONF_MAX_IDX,
    CONF_MAX_LEN,
    CONF_MAX_N,
    CONF_SEED,
    CONF_SIGMAS,
    CONF_SIZES,
    CONF_TRIALS,
    CONF_WIDTH,
    LOGGER,
    SUITE_ALIASES,
    SUITE_ALL,
    SUITE_CENTRAL_WINDOW,
    SUITE_CONTACT_ORDER,
    SUITE_MOMENT_LIMIT,
    SUITE_ONE_SIDED_CF,
    SUITE_PATH_ORACLE,
    SUITE_REFLECTED_CF,
    SUITE_RELATIONS,
    SUITE_TRUNCATED_CF,
    SUITE_TWO_SIDED,
    SUITE_TWO_SIDED_CF,
    SUITES,
)
from .ensemble import (
    DistributionDescriptor,
    EnsembleSpec,
    exact_expected_diagonal,
    exact_expected_trace,
    expected_weight_polynomial,
    moment_reports,
    sample_trace_moments,
)
from .errors import UnknownSuite
from .lattice_paths import central_window, weight_polynomial_brute
from .mcf import (
    LevelContext,
    agreement_depth,
    expand,
    level_coefficients,
    scalar_double_cf,
    tail_matrix,
    target_matrix,
    transform_t,
)
from .models import BandParameters, Family, Flavor, PathConstraint, Ring, TailKind
from .pade import contact_sweep
from .resolvent import characteristic_data, relation_residuals, series_by_powers, series_matrix

MAX_BAND = 3

Options = Mapping[str, Any]


@attr.s(auto_attribs=True, frozen=True)
class CheckResult:
    """One checked identity."""

    name: str
    passed: bool
    params: Dict[str, Any] = attr.ib(factory=dict)
    residual: Any = None

    def as_dict(self) -> Dict[str, Any]:
        """JSON form."""
        out = {"name": self.name, "passed": self.passed, "params": self.params}
        if self.residual is not None:
            out["residual"] = self.residual
        return out


@attr.s(auto_attribs=True, frozen=True)
class SuiteReport:
    """All checks of one suite run."""

    suite: str
    options: Dict[str, Any]
    checks: List[CheckResult]

    @property
    def passed(self) -> bool:
        """Every check passed."""
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> List[CheckResult]:
        """Checks that failed."""
        return [check for check in self.checks if not check.passed]

    def as_dict(self) -> Dict[str, Any]:
        """JSON form."""
        return {
            "suite": self.suite,
            "passed": self.passed,
            "options": self.options,
            "checks": [check.as_dict() for check in self.checks],
        }


def random_spec(
    rng: np.random.Generator, radius: int, params: Optional[BandParameters] = None
) -> BandSpec:
    """Rational spec on -radius..radius; p, q drawn from 1..3 unless given."""

    if params is None:
        params = BandParameters(
            int(rng.integers(1, MAX_BAND + 1)), int(rng.integers(1, MAX_BAND + 1))
        )
    return BandSpec.random(params, rng, -radius, radius)


def random_ensemble(rng: np.random.Generator, params: BandParameters) -> EnsembleSpec:
    """One randomly chosen bounded law per diagonal."""

    def draw() -> DistributionDescriptor:
        choice = int(rng.integers(0, 4))
        if choice == 0:
            return DistributionDescriptor.point_mass(Fraction(int(rng.integers(-2, 3)), 2))
        if choice == 1:
            return DistributionDescriptor.rademacher()
        if choice == 2:
            low = int(rng.integers(-2, 2))
            return DistributionDescriptor.uniform(low, low + int(rng.integers(1, 3)))
        return DistributionDescriptor.discrete(
            [int(rng.integers(-3, 0)), int(rng.integers(0, 4))],
            [Fraction(1, 4), Fraction(3, 4)],
        )

    return EnsembleSpec(params, {k: draw() for k in params.diagonals})


def _shape(spec: BandSpec, trial: int, **extra: Any) -> Dict[str, Any]:
    return {"trial": trial, "p": spec.p, "q": spec.q, **extra}


def _serialize(spec: BandSpec, value: Any) -> Any:
    return spec.ring.serialize(value)


def _specs(options: Options, radius: int) -> List[Tuple[int, BandSpec]]:
    rng = np.random.default_rng(options[CONF_SEED])
    return [(t, random_spec(rng, radius)) for t in range(options[CONF_TRIALS])]


def _relations(options: Options) -> List[CheckResult]:
    width, max_idx = options[CONF_WIDTH], options[CONF_MAX_IDX]
    checks = []
    for t, spec in _specs(options, MAX_BAND * (width + 2) + max_idx + 4):
        report = relation_residuals(spec, width, max_idx)
        worst = max(report.residuals.values(), default=Fraction(0))
        checks.append(
            CheckResult(
                "relations",
                report.passed,
                _shape(spec, t, width=width, maxIdx=max_idx),
                _serialize(spec, worst),
            )
        )
    return checks


def _path_cells(
    rng: np.random.Generator, max_idx: int
) -> List[Tuple[Family, int, int, Optional[int], PathConstraint]]:
    def index() -> int:
        return int(rng.integers(0, max_idx + 1))

    n = int(rng.integers(1, max_idx + 2))
    return [
        (Family.A, index(), index(), None, PathConstraint.non_negative()),
        (Family.W, index() - max_idx // 2, index() - max_idx // 2, None, PathConstraint.free()),
        (Family.V, -1 - index(), -1 - index(), None, PathConstraint.below_minus_one()),
        (
            Family.RN,
            int(rng.integers(0, n)),
            int(rng.integers(0, n)),
            n,
            PathConstraint.band(n),
        ),
    ]


def _path_oracle(options: Options) -> List[CheckResult]:
    max_len, max_idx = options[CONF_MAX_LEN], options[CONF_MAX_IDX]
    rng = np.random.default_rng(options[CONF_SEED])
    radius = MAX_BAND * (max_len + 1) + max_idx + 4
    checks = []
    for t in range(options[CONF_TRIALS]):
        spec = random_spec(rng, radius)
        for family, i, j, n, constraint in _path_cells(rng, max_idx):
            series = series_by_powers(family, i, j, max_len + 1, spec, n=n)
            mismatches = [
                ell
                for ell in range(max_len + 1)
                if series.coefficient(-(ell + 1))
                != weight_polynomial_brute(ell, i, j, constraint, spec)
            ]
            checks.append(
                CheckResult(
                    f"oracle:{family.value}",
                    not mismatches,
                    _shape(spec, t, i=i, j=j, n=n, maxLen=max_len),
                    mismatches,
                )
            )
    return checks


def _two_sided(options: Options) -> List[CheckResult]:
    width = options[CONF_WIDTH]
    checks = []
    for t, spec in _specs(options, MAX_BAND * (width + 2) + 4):
        corner = series_matrix(Family.ZETA, spec.q, spec.p, width, spec)
        two_sided = series_matrix(Family.W, spec.q, spec.p, width, spec)
        checks.append(
            CheckResult("zeta_equals_w", corner.equal_to_precision(two_sided), _shape(spec, t))
        )

        reflected = spec.reflect()
        same = all(
            series_by_powers(Family.V, -a, -b, width, spec).equal_to_precision(
                series_by_powers(Family.A, b - 1, a - 1, width, reflected)
            )
            for a in range(1, 3)
            for b in range(1, 3)
        )
        checks.append(CheckResult("v_by_reflection", same, _shape(spec, t)))
    return checks


def _fold_checks(
    flavor: Flavor, ctx: LevelContext, levels: int, t: int
) -> List[CheckResult]:
    target = target_matrix(flavor, ctx)
    checks = []
    for k in range(1, levels + 1):
        folded = expand(flavor, k, TailKind.EXACT, ctx)
        checks.append(
            CheckResult(
                f"{flavor.value}_fold",
                folded.equal_to_precision(target),
                _shape(ctx.spec, t, levels=k, width=ctx.width),
            )
        )
    approx = expand(flavor, levels, TailKind.ZERO, ctx)
    depth = agreement_depth(approx, target)
    bound = zero_tail_bound(levels, ctx.spec.p, ctx.spec.q)
    known = -max(approx.floor, target.floor)
    checks.append(
        CheckResult(
            f"{flavor.value}_zero_tail_prefix",
            depth >= min(bound, known),
            _shape(ctx.spec, t, levels=levels, width=ctx.width, bound=bound),
            depth,
        )
    )
    return checks


def zero_tail_bound(levels: int, p: int, q: int) -> int:
    """Leading coefficients a zero tail below `levels` levels cannot change.

    Only paths reaching height `levels` see the tail; from the corner cell
    (q - 1, p - 1) such a path needs levels // q up and levels // p down steps.
    """
    return levels // q + levels // p


def _one_sided_cf(options: Options) -> List[CheckResult]:
    width, levels = options[CONF_WIDTH], options[CONF_LEVELS]
    checks = []
    for t, spec in _specs(options, MAX_BAND * (width + levels + 2) + 4):
        ctx = LevelContext(spec, width)
        full = target_matrix(Flavor.ALPHA, ctx)
        first = level_coefficients(Flavor.ALPHA, 0, ctx)
        inner = tail_matrix(TailKind.EXACT, Flavor.ALPHA, 1, ctx)
        checks.append(
            CheckResult(
                "t_of_f",
                transform_t(full).equal_to_precision(
                    first.lin + first.left @ inner @ first.right
                ),
                _shape(spec, t, width=width),
            )
        )
        checks.extend(_fold_checks(Flavor.ALPHA, ctx, levels, t))
    return checks


def _two_sided_cf(options: Options) -> List[CheckResult]:
    width, levels, depth = options[CONF_WIDTH], options[CONF_LEVELS], options[CONF_DEPTH]
    radius = MAX_BAND * (width + levels + 2) + 4
    rng = np.random.default_rng(options[CONF_SEED])
    checks = []
    for t in range(options[CONF_TRIALS]):
        spec = random_spec(rng, radius)
        checks.extend(_fold_checks(Flavor.BETA, LevelContext(spec, width), levels, t))

        scalar = random_spec(rng, radius, BandParameters(1, 1))
        full = series_by_powers(Family.W, 0, 0, width, scalar)
        for d in range(1, min(depth, width) + 1):
            folded = scalar_double_cf(scalar, d, d, width)
            checks.append(
                CheckResult(
                    "double_cf",
                    all(
                        folded.coefficient(-m) == full.coefficient(-m)
                        for m in range(1, d + 1)
                    ),
                    _shape(scalar, t, depth=d, width=width),
                )
            )
    return checks


def _reflected_cf(options: Options) -> List[CheckResult]:
    width, levels = options[CONF_WIDTH], options[CONF_LEVELS]
    checks = []
    for t, spec in _specs(options, MAX_BAND * (width + levels + 2) + 4):
        ctx = LevelContext(spec, width)
        target = target_matrix(Flavor.NU, ctx)
        checks.append(
            CheckResult(
                "nu_target_is_v",
                all(
                    entry.equal_to_precision(series_by_powers(Family.V, -j - 1, -i - 1, width, spec))
                    for i, j, entry in target.cells()
                ),
                _shape(spec, t, width=width),
            )
        )
        checks.extend(_fold_checks(Flavor.NU, ctx, levels, t))
    return checks


def _contact_order(options: Options) -> List[CheckResult]:
    max_n = options[CONF_MAX_N]
    checks = []
    for t, spec in _specs(options, MAX_BAND * (2 * max_n + 4) + 4):
        for n in range(1, max_n + 1):
            sweep = contact_sweep(spec, n)
            checks.append(
                CheckResult(
                    "contact_order",
                    sweep.violations == 0,
                    _shape(spec, t, n=n, strictFraction=sweep.strict_fraction),
                    sweep.min_slack,
                )
            )
    return checks


def _truncated_cf(options: Options) -> List[CheckResult]:
    width, max_n = options[CONF_WIDTH], options[CONF_MAX_N]
    checks = []
    for t, spec in _specs(options, MAX_BAND * (width + max_n + 2) + 4):
        for n in range(1, max_n + 1):
            ctx = LevelContext(spec, width, n)
            target = target_matrix(Flavor.RHO, ctx)
            folded = expand(Flavor.RHO, n, TailKind.DIAG, ctx)
            checks.append(
                CheckResult(
                    "rho_fold", folded.equal_to_precision(target), _shape(spec, t, n=n)
                )
            )

            data = characteristic_data(spec, n)
            cells = [(i, j) for i, j, _ in target.cells() if i < n and j < n]
            checks.append(
                CheckResult(
                    "rn_rational",
                    all(
                        target.entry(i, j).equal_to_precision(data.pair(i, j).series(width))
                        and target.entry(i, j).equal_to_precision(
                            series_by_powers(Family.RN, i, j, width, spec, n=n)
                        )
                        for i, j in cells
                    ),
                    _shape(spec, t, n=n),
                )
            )
    return checks


def _central_window(options: Options) -> List[CheckResult]:
    ell_max = options[CONF_ELL_MAX]
    rng = np.random.default_rng(options[CONF_SEED])
    checks = []
    for t in range(options[CONF_TRIALS]):
        for p in (1, 2):
            for q in (1, 2):
                params = BandParameters(p, q)
                ens = random_ensemble(rng, params)
                for ell in range(ell_max + 1):
                    window = central_window(ell, params)
                    n = 2 * window + 3
                    limit = expected_weight_polynomial(ens, ell)
                    middle = [
                        exact_expected_diagonal(ens, n, ell, i)
                        for i in range(window, n - window)
                    ]
                    checks.append(
                        CheckResult(
                            "middle_diagonal",
                            all(value == limit for value in middle),
                            {"trial": t, "p": p, "q": q, "ell": ell, "n": n, "N": window},
                            Ring.RATIONAL.serialize(limit),
                        )
                    )
    return checks


def _moment_limit(options: Options) -> List[CheckResult]:
    ens = EnsembleSpec.from_dict(options[CONF_ENSEMBLE])
    sizes, trials, seed = options[CONF_SIZES], options[CONF_TRIALS], options[CONF_SEED]
    ell_max, sigmas, jobs = options[CONF_ELL_MAX], options[CONF_SIGMAS], options[CONF_JOBS]
    reports = moment_reports(ens, ell_max, sizes, trials, seed, jobs)

    checks = []
    for report in reports:
        params = {"ell": report.ell, "sizes": list(report.sizes), "trials": trials}
        checks.append(
            CheckResult(
                "limit", report.within(sigmas), params, report.estimates[-1][0]
            )
        )
        checks.append(CheckResult("trend", report.trend(), params, report.errors()))
        for n, (mean, stderr) in zip(report.sizes, report.estimates):
            expected = float(exact_expected_trace(ens, n, report.ell))
            checks.append(
                CheckResult(
                    "finite_mean",
                    abs(mean - expected) <= sigmas * stderr + 1e-12,
                    {"ell": report.ell, "n": n},
                    mean - expected,
                )
            )

    serial = sample_trace_moments(ens, sizes[0], ell_max, min(trials, 16), seed, jobs=1)
    threaded = sample_trace_moments(ens, sizes[0], ell_max, min(trials, 16), seed, jobs=max(2, jobs))
    checks.append(
        CheckResult("thread_independent", serial == threaded, {"n": sizes[0], "seed": seed})
    )
    return checks


SUITE_RUNNERS: Dict[str, Callable[[Options], List[CheckResult]]] = {
    SUITE_RELATIONS: _relations,
    SUITE_PATH_ORACLE: _path_oracle,
    SUITE_TWO_SIDED: _two_sided,
    SUITE_ONE_SIDED_CF: _one_sided_cf,
    SUITE_TWO_SIDED_CF: _two_sided_cf,
    SUITE_REFLECTED_CF: _reflected_cf,
    SUITE_CONTACT_ORDER: _contact_order,
    SUITE_TRUNCATED_CF: _truncated_cf,
    SUITE_CENTRAL_WINDOW: _central_window,
    SUITE_MOMENT_LIMIT: _moment_limit,
}


def suite_name(suite: str) -> str:
    """Canonical name of a suite, resolving descriptive aliases."""

    name = SUITE_ALIASES.get(suite, suite)
    if name != SUITE_ALL and name not in SUITE_RUNNERS:
        raise UnknownSuite(
            f"Unknown suite {suite!r}; expected one of {SUITES + [SUITE_ALL]} "
            f"or an alias in {sorted(SUITE_ALIASES)}"
        )
    return name


def run_suite(suite: str, options: Optional[Options] = None) -> SuiteReport:
    """Run one named suite; omitted options take their defaults."""

    suite = suite_name(suite)
    if suite == SUITE_ALL:
        raise UnknownSuite(f"{SUITE_ALL!r} names every suite; use run_verify")
    resolved = validate(SUITE_OPTIONS[suite], dict(options or {}), f"{suite} options")
    LOGGER.debug("Running suite %s with %s", suite, resolved)
    checks = SUITE_RUNNERS[suite](resolved)
    report = SuiteReport(suite, dict(resolved), checks)
    for failure in report.failures:
        LOGGER.debug("Suite %s failed %s %s", suite, failure.name, failure.params)
    return report


def run_verify(suite: str, options: Optional[Options] = None) -> List[SuiteReport]:
    """Run a suite, or every suite for `all`."""

    suite = suite_name(suite)
    names = SUITES if suite == SUITE_ALL else [suite]
    return [run_suite(name, options) for name in names]
