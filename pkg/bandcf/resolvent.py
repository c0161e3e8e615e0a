"""Generating series as resolvent entries of banded operators.

Every family is computed the same way: apply the banded operator to e_j
repeatedly on a finite set of indices and read off row i after each step.
"""

from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Tuple, Union

import attr
import numpy as np

from .band_spec import BandSpec
from .const import LOGGER
from .errors import ExactRingRequired, IndexOutOfRange, InvalidInput
from .laurent_series import SeriesMatrix, TruncatedLaurentSeries, invert
from .lattice_paths import height_bounds
from .models import BandParameters, Family, Ring, Scalar

Value = Union[Scalar, TruncatedLaurentSeries]


@attr.s(frozen=True)
class SpecOperator:
    """H, W, the reflected-below-minus-one block, or H_n, read from a spec.

    Indices are restricted to lower..upper; entries touching an index
    >= cutoff are zero.
    """

    spec: BandSpec = attr.ib()
    lower: Optional[int] = attr.ib(default=0)
    upper: Optional[int] = attr.ib(default=None)
    cutoff: Optional[int] = attr.ib(default=None)

    @property
    def params(self) -> BandParameters:
        """Band shape."""
        return self.spec.params

    @property
    def ring(self) -> Ring:
        """Coefficient ring."""
        return self.spec.ring

    def entry(self, i: int, j: int) -> Value:
        """Operator entry (i, j)."""

        if self.cutoff is not None and max(i, j) >= self.cutoff:
            return self.ring.zero()
        return self.spec.entry_w(i, j)

    def check_window(self, bottom: int, top: int) -> None:
        """Fail fast on uncovered coefficients between these heights."""

        if self.cutoff is not None:
            top = min(top, self.cutoff - 1)
        if bottom <= top:
            self.spec.check_heights(bottom, top)


@attr.s(frozen=True)
class KOperator:
    """H with its p x q corner corrected by series built from V.

    offset r serves K_r, the matrix with its first r rows and columns removed.
    """

    spec: BandSpec = attr.ib()
    width: int = attr.ib()
    corrections: Mapping[Tuple[int, int], TruncatedLaurentSeries] = attr.ib(
        eq=False, repr=False
    )
    offset: int = attr.ib(default=0)
    lower: Optional[int] = 0
    upper: Optional[int] = None

    @property
    def params(self) -> BandParameters:
        """Band shape."""
        return self.spec.params

    @property
    def ring(self) -> Ring:
        """Coefficient ring."""
        return self.spec.ring

    def shifted(self, r: int) -> "KOperator":
        """K_r sharing the corner series."""
        return attr.evolve(self, offset=self.offset + r)

    def entry(self, i: int, j: int) -> Value:
        """K_(i+offset, j+offset)."""

        i, j = i + self.offset, j + self.offset
        value = self.spec.entry_h(i, j)
        correction = self.corrections.get((i, j))
        if correction is None:
            return value
        return correction + value

    def check_window(self, bottom: int, top: int) -> None:
        """Fail fast on uncovered coefficients of the shifted H part."""
        self.spec.check_heights(bottom + self.offset, top + self.offset)


Operator = Union[SpecOperator, KOperator]


def build_k(spec: BandSpec, width: int) -> KOperator:
    """Provider of the K matrix at the given series width.

    K_(i,j) = h_(i,j) + sum_l sum_m w_(i,-l) V_(-l,-m) w_(-m,j) for i < p, j < q.
    """

    p, q = spec.p, spec.q
    below = {
        (l, m): series_by_powers(Family.V, -l, -m, width, spec)
        for l in range(1, p + 1)
        for m in range(1, q + 1)
    }
    corrections = {}
    for i in range(p):
        for j in range(q):
            total = TruncatedLaurentSeries.zero(spec.ring, -width)
            for l in range(1, p - i + 1):
                for m in range(1, q - j + 1):
                    weight = spec.entry_w(i, -l) * spec.entry_w(-m, j)
                    total = total + below[(l, m)] * weight
            corrections[(i, j)] = total

    LOGGER.debug("Built K corner %sx%s at width %s", p, q, width)
    return KOperator(spec, width, corrections)


@attr.s(auto_attribs=True, frozen=True)
class ResolventRequest:
    """Which generating series to compute."""

    family: Family
    i: int
    j: int
    width: int
    shift: int = 0
    n: Optional[int] = None

    @staticmethod
    def parse_family(text: str) -> Tuple[Family, int, Optional[int]]:
        """Read a, ak:K, w, v, zeta or rn:N."""

        name, _, arg = text.partition(":")
        try:
            family = Family(name)
        except ValueError as error:
            raise InvalidInput(f"Unknown family {text!r}") from error
        if family not in (Family.AK, Family.RN):
            return family, 0, None
        if not arg.isdigit():
            raise InvalidInput(f"Family {name} needs a number, got {text!r}")
        if family is Family.AK:
            return family, int(arg), None
        return family, 0, int(arg)

    def series(self, spec: BandSpec) -> TruncatedLaurentSeries:
        """Compute this request against spec."""
        return series_by_powers(
            self.family, self.i, self.j, self.width, spec, shift=self.shift, n=self.n
        )


def family_operator(
    family: Family,
    i: int,
    j: int,
    width: int,
    spec: BandSpec,
    shift: int = 0,
    n: Optional[int] = None,
) -> Operator:
    """Operator whose (i, j) resolvent entry is the requested series."""

    if family is Family.V:
        if i > -1 or j > -1:
            raise IndexOutOfRange(f"V is indexed by i, j <= -1, got ({i}, {j})")
        return SpecOperator(spec, lower=None, upper=-1)
    if family is Family.W:
        return SpecOperator(spec, lower=None)
    if i < 0 or j < 0:
        raise IndexOutOfRange(f"{family.value} is indexed by i, j >= 0, got ({i}, {j})")
    if family is Family.A:
        return SpecOperator(spec)
    if family is Family.AK:
        return SpecOperator(spec.shift(shift))
    if family is Family.ZETA:
        return build_k(spec, width)
    if n is None or n < 1:
        raise IndexOutOfRange("Truncation size n must be >= 1")
    if i >= n or j >= n:
        raise IndexOutOfRange(f"R_n needs 0 <= i, j <= {n - 1}, got ({i}, {j})")
    return SpecOperator(spec, upper=n - 1)


def _in_range(index: int, op: Operator) -> bool:
    return (op.lower is None or index >= op.lower) and (
        op.upper is None or index <= op.upper
    )


def power_entries(op: Operator, i: int, j: int, count: int) -> List[Value]:
    """(M^l)_(i, j) for l = 0..count-1, by repeated band application to e_j."""

    params = op.params
    bounds = height_bounds(count - 1, i, j, params)
    if bounds is not None:
        bottom = bounds[0] if op.lower is None else max(bounds[0], op.lower)
        top = bounds[1] if op.upper is None else min(bounds[1], op.upper)
        op.check_window(bottom, top)

    vector: Dict[int, Value] = {j: op.ring.one()}
    out: List[Value] = []
    for ell in range(count):
        out.append(vector.get(i, op.ring.zero()))
        if ell == count - 1:
            break
        remaining = count - 2 - ell
        nxt: Dict[int, Value] = {}
        for col, value in vector.items():
            for row in range(col - params.q, col + params.p + 1):
                if not _in_range(row, op):
                    continue
                if row - i > remaining * params.q or i - row > remaining * params.p:
                    continue
                entry = op.entry(row, col)
                if not isinstance(entry, TruncatedLaurentSeries) and entry == 0:
                    continue
                term = entry * value
                nxt[row] = nxt[row] + term if row in nxt else term
        vector = nxt
    return out


def series_by_powers(
    family: Family,
    i: int,
    j: int,
    width: int,
    spec: BandSpec,
    shift: int = 0,
    n: Optional[int] = None,
) -> TruncatedLaurentSeries:
    """Series sum_l (M^l)_(i, j) z^-(l+1) to `width` coefficients."""

    if width < 1:
        raise InvalidInput(f"Width must be >= 1, got {width}")
    op = family_operator(family, i, j, width, spec, shift, n)
    values = power_entries(op, i, j, width)

    LOGGER.debug("Series %s(%s, %s) width=%s", family.value, i, j, width)

    return _resolvent_series(values, spec.ring, width)


def _resolvent_series(values: List[Value], ring: Ring, width: int) -> TruncatedLaurentSeries:
    if not any(isinstance(v, TruncatedLaurentSeries) for v in values):
        return TruncatedLaurentSeries.from_powers(values, ring)

    # series-valued powers spill into deeper exponents
    total = TruncatedLaurentSeries.zero(ring, -width)
    for ell, value in enumerate(values):
        if not isinstance(value, TruncatedLaurentSeries):
            value = TruncatedLaurentSeries.constant(value, ring, ell - width + 1)
        total = total + value.shift(-(ell + 1))
    return TruncatedLaurentSeries.from_powers(
        [total.coefficient(e) for e in range(-1, -width - 1, -1)], ring
    )


def operator_matrix(op: Operator, rows: int, cols: int, width: int) -> SeriesMatrix:
    """Top-left corner of (zI - M)^-1 for an operator M."""
    return SeriesMatrix(
        [
            [
                _resolvent_series(power_entries(op, i, j, width), op.ring, width)
                for j in range(cols)
            ]
            for i in range(rows)
        ],
        op.ring,
    )


def series_matrix(
    family: Family,
    rows: int,
    cols: int,
    width: int,
    spec: BandSpec,
    shift: int = 0,
    n: Optional[int] = None,
) -> SeriesMatrix:
    """(series(i, j)) for 0 <= i < rows, 0 <= j < cols."""

    if family is Family.ZETA:
        return operator_matrix(build_k(spec, width), rows, cols, width)
    return SeriesMatrix(
        [
            [series_by_powers(family, i, j, width, spec, shift, n) for j in range(cols)]
            for i in range(rows)
        ],
        spec.ring,
    )


@attr.s(auto_attribs=True, frozen=True)
class RationalFunctionPair:
    """P / Q with Q monic; coefficients in ascending degree."""

    numerator: Tuple[Fraction, ...] = attr.ib(converter=tuple)
    denominator: Tuple[Fraction, ...] = attr.ib(converter=tuple)

    @property
    def degree(self) -> int:
        """Degree of Q."""
        return len(self.denominator) - 1

    def series(self, width: int) -> TruncatedLaurentSeries:
        """Expansion at infinity to `width` coefficients."""

        n = self.degree
        top = TruncatedLaurentSeries.from_exponents(
            dict(enumerate(self.numerator)), Ring.RATIONAL, n - width
        )
        bottom = TruncatedLaurentSeries.from_exponents(
            dict(enumerate(self.denominator)), Ring.RATIONAL, n - width + 1
        )
        quotient = top * invert(bottom)
        return TruncatedLaurentSeries.from_powers(
            [quotient.coefficient(e) for e in range(-1, -width - 1, -1)], Ring.RATIONAL
        )

    def as_dict(self) -> Dict[str, Any]:
        """JSON form."""
        return {
            "numerator": [Ring.RATIONAL.serialize(c) for c in self.numerator],
            "denominator": [Ring.RATIONAL.serialize(c) for c in self.denominator],
        }


@attr.s(auto_attribs=True, frozen=True)
class CharacteristicData:
    """det(zI - H_n) and the polynomial entries of adj(zI - H_n).

    adjugate[k - 1] is the matrix coefficient of z^(n - k).
    """

    denominator: Tuple[Fraction, ...]
    adjugate: Tuple[np.ndarray, ...]

    def pair(self, i: int, j: int) -> RationalFunctionPair:
        """P_(i,j,n) / Q_n."""

        numerator = [Fraction(m[i, j]) for m in reversed(self.adjugate)]
        while len(numerator) > 1 and numerator[-1] == 0:
            numerator.pop()
        return RationalFunctionPair(numerator, self.denominator)


def characteristic_data(spec: BandSpec, n: int) -> CharacteristicData:
    """Faddeev-LeVerrier pass over H_n in exact arithmetic."""

    if not spec.ring.exact:
        raise ExactRingRequired("Characteristic polynomials need the rational ring")

    matrix = np.array(spec.truncate_h(n), dtype=object)
    identity = np.array(
        [[Fraction(int(r == c)) for c in range(n)] for r in range(n)], dtype=object
    )
    coefficients = [Fraction(0)] * (n + 1)
    coefficients[n] = Fraction(1)
    current = np.zeros((n, n), dtype=object)
    adjugate = []
    for k in range(1, n + 1):
        current = matrix.dot(current) + identity * coefficients[n - k + 1]
        adjugate.append(current)
        coefficients[n - k] = -Fraction(np.trace(matrix.dot(current))) / k

    return CharacteristicData(tuple(coefficients), tuple(adjugate))


def trunc_resolvent_rational(spec: BandSpec, n: int, i: int, j: int) -> RationalFunctionPair:
    """R_(i,j,n) = P_(i,j,n) / Q_n as a pair of polynomials."""

    if not (0 <= i < n and 0 <= j < n):
        raise IndexOutOfRange(f"Need 0 <= i, j <= {n - 1}, got ({i}, {j})")
    return characteristic_data(spec, n).pair(i, j)


@attr.s(auto_attribs=True)
class RelationReport:
    """Largest residual coefficient per relation family."""

    width: int
    max_idx: int
    residuals: Dict[str, Scalar] = attr.ib(factory=dict)
    worst_cell: Dict[str, Tuple[int, int]] = attr.ib(factory=dict)

    @property
    def passed(self) -> bool:
        """All residuals vanish."""
        return all(value == 0 for value in self.residuals.values())

    def record(self, name: str, cell: Tuple[int, int], residual: TruncatedLaurentSeries) -> None:
        """Keep the largest residual seen for a relation."""

        value = residual.max_abs()
        if name not in self.residuals or value > self.residuals[name]:
            self.residuals[name] = value
            self.worst_cell[name] = cell


class _SeriesCache:
    def __init__(self, spec: BandSpec, width: int) -> None:
        self.spec = spec
        self.width = width
        self.items: Dict[Tuple[int, int, int], TruncatedLaurentSeries] = {}

    def get(self, shift: int, i: int, j: int) -> TruncatedLaurentSeries:
        key = (shift, i, j)
        if key not in self.items:
            self.items[key] = series_by_powers(
                Family.AK, i, j, self.width, self.spec, shift=shift
            )
        return self.items[key]


def relation_residuals(
    spec: BandSpec,
    width: int,
    max_idx: int,
    shifted: Optional[Mapping[Tuple[int, int], TruncatedLaurentSeries]] = None,
) -> RelationReport:
    """Residuals of the A / A^(1) relations and the two linear recurrences.

    `shifted` replaces individual A^(1) series, which lets callers check that
    a corrupted input is detected.
    """

    p, q, ring = spec.p, spec.q, spec.ring
    cache = _SeriesCache(spec, width)
    for (i, j), series in (shifted or {}).items():
        cache.items[(1, i, j)] = series

    def a(i: int, j: int) -> TruncatedLaurentSeries:
        return cache.get(0, i, j)

    def a1(i: int, j: int) -> TruncatedLaurentSeries:
        return cache.get(1, i, j)

    def c(k: int, m: int) -> Scalar:
        return spec.coefficient(k, m)

    z = TruncatedLaurentSeries.monomial(1, 1, ring, -width - 2)
    report = RelationReport(width, max_idx)

    def upper_sum(j: int) -> TruncatedLaurentSeries:
        total = TruncatedLaurentSeries.zero(ring, -width)
        for r in range(1, q + 1):
            total = total + a1(r - 1, j - 1) * c(r, 0)
        return total

    def lower_sum(i: int) -> TruncatedLaurentSeries:
        total = TruncatedLaurentSeries.zero(ring, -width)
        for s in range(1, p + 1):
            total = total + a1(i - 1, s - 1) * c(-s, 0)
        return total

    denominator = z - c(0, 0)
    for r in range(1, q + 1):
        for s in range(1, p + 1):
            denominator = denominator - a1(r - 1, s - 1) * (c(r, 0) * c(-s, 0))
    report.record("reciprocal", (0, 0), a(0, 0) - invert(denominator))

    for j in range(1, max_idx + 1):
        report.record("first_row", (0, j), a(0, j) - a(0, 0) * upper_sum(j))
    for i in range(1, max_idx + 1):
        report.record("first_column", (i, 0), a(i, 0) - a(0, 0) * lower_sum(i))
    for i in range(1, max_idx + 1):
        for j in range(1, max_idx + 1):
            ratio = a(i, 0) * a(0, j) * invert(a(0, 0))
            report.record("cross_ratio", (i, j), a(i, j) - (ratio + a1(i - 1, j - 1)))

    for i in range(max_idx + 1):
        for j in range(max_idx + 1):
            delta = ring.one() if i == j else ring.zero()
            left = z * a(i, j) - delta

            right = TruncatedLaurentSeries.zero(ring, -width)
            for r in range(1, p + 1):
                right = right + a(i, j + r) * c(-r, j)
            for r in range(0, min(j, q) + 1):
                right = right + a(i, j - r) * c(r, j - r)
            report.record("column_recurrence", (i, j), left - right)

            right = TruncatedLaurentSeries.zero(ring, -width)
            for r in range(1, q + 1):
                right = right + a(i + r, j) * c(r, i)
            for r in range(0, min(i, p) + 1):
                right = right + a(i - r, j) * c(-r, i - r)
            report.record("row_recurrence", (i, j), left - right)

    LOGGER.debug("Relation residuals %s", report.residuals)
    return report
