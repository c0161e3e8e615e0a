"""How far a truncation resolvent R_(i,j,n) follows A_(i,j)."""

from typing import Any, Dict, List, Optional

import attr

from .band_spec import BandSpec
from .const import LOGGER
from .errors import IndexOutOfRange, InvalidInput
from .laurent_series import TruncatedLaurentSeries, first_difference
from .models import Family
from .resolvent import series_by_powers


def predicted_l(n: int, i: int, j: int, p: int, q: int) -> int:
    """floor((n-1-i)/q) + floor((n-1-j)/p) + 1."""

    if not (0 <= i < n and 0 <= j < n):
        raise IndexOutOfRange(f"Need 0 <= i, j <= {n - 1}, got ({i}, {j})")
    return (n - 1 - i) // q + (n - 1 - j) // p + 1


@attr.s(auto_attribs=True, frozen=True)
class ContactReport:
    """Observed agreement of A_(i,j) and R_(i,j,n)."""

    n: int
    i: int
    j: int
    width: int
    predicted_l: int
    observed_match: int
    strict_at_next: bool

    @property
    def slack(self) -> int:
        """observed_match - (L + 1); never negative when the bound holds."""
        return self.observed_match - (self.predicted_l + 1)

    @property
    def passed(self) -> bool:
        """Whether z^-1 .. z^-(L+1) agree."""
        return self.slack >= 0

    def as_dict(self) -> Dict[str, Any]:
        """JSON form."""
        return {
            "n": self.n,
            "i": self.i,
            "j": self.j,
            "width": self.width,
            "predictedL": self.predicted_l,
            "observedMatch": self.observed_match,
            "strictAtNext": self.strict_at_next,
        }


def _observed_match(
    full: TruncatedLaurentSeries, truncated: TruncatedLaurentSeries, width: int
) -> int:
    exponent = first_difference(full, truncated)
    if exponent is None:
        return width
    return -exponent - 1


def contact_order(spec: BandSpec, n: int, i: int, j: int, width: int) -> ContactReport:
    """Compare A_(i,j) with R_(i,j,n) coefficient by coefficient."""

    if n < 1:
        raise IndexOutOfRange(f"Truncation size must be >= 1, got {n}")
    predicted = predicted_l(n, i, j, spec.p, spec.q)
    if width < predicted + 1:
        raise InvalidInput(f"Width {width} cannot show agreement through z^-{predicted + 1}")

    full = series_by_powers(Family.A, i, j, width, spec)
    truncated = series_by_powers(Family.RN, i, j, width, spec, n=n)
    observed = _observed_match(full, truncated, width)

    strict = False
    after = -(predicted + 2)
    if after >= -width:
        strict = not spec.ring.close(
            full.coefficient(after),
            truncated.coefficient(after),
            max(full.scale, truncated.scale),
        )

    LOGGER.debug(
        "Contact n=%s (%s, %s): L=%s observed=%s", n, i, j, predicted, observed
    )
    return ContactReport(n, i, j, width, predicted, observed, strict)


@attr.s(auto_attribs=True, frozen=True)
class ContactSweep:
    """Every cell of one truncation size."""

    n: int
    reports: List[ContactReport]

    @property
    def min_slack(self) -> Optional[int]:
        """Smallest observed_match - (L + 1) over the cells."""
        return min((r.slack for r in self.reports), default=None)

    @property
    def violations(self) -> int:
        """Cells below the bound."""
        return sum(1 for r in self.reports if not r.passed)

    @property
    def strict_fraction(self) -> float:
        """Share of cells where the bound is attained exactly."""
        if not self.reports:
            return 0.0
        return sum(1 for r in self.reports if r.strict_at_next) / len(self.reports)


def default_width(n: int, p: int, q: int) -> int:
    """Enough coefficients to check strictness at every cell."""
    return predicted_l(n, 0, 0, p, q) + 3


def contact_sweep(spec: BandSpec, n: int, width: Optional[int] = None) -> ContactSweep:
    """ContactReports for all 0 <= i, j <= n - 1."""

    width = default_width(n, spec.p, spec.q) if width is None else width
    return ContactSweep(
        n,
        [contact_order(spec, n, i, j, width) for i in range(n) for j in range(n)],
    )
