"""Truncated formal Laurent series in 1/z and matrices of them.

A series stores the coefficients of z^hi, z^(hi-1), ..., z^prec. Everything
above hi is zero, everything below prec is unknown.
"""

from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import attr

from .const import LOGGER
from .errors import PrecisionMiss, RingMismatch, ShapeMismatch, ZeroLeadingCoefficient
from .models import Ring, Scalar, ring_of

MINUS_INFINITY = float("-inf")

Degree = Union[int, float]


def _magnitude(value: Scalar) -> Union[Fraction, float]:
    return abs(value)


@attr.s(frozen=True, eq=False, repr=False)
class TruncatedLaurentSeries:
    """Laurent series known down to exponent prec."""

    hi: int = attr.ib()
    prec: int = attr.ib()
    coeffs: Tuple[Scalar, ...] = attr.ib(converter=tuple)
    ring: Ring = attr.ib()

    def __attrs_post_init__(self) -> None:
        if self.prec > self.hi + 1:
            raise PrecisionMiss(f"prec {self.prec} above hi + 1 = {self.hi + 1}")
        if len(self.coeffs) != self.hi - self.prec + 1:
            raise PrecisionMiss(
                f"{len(self.coeffs)} coefficients for exponents {self.hi}..{self.prec}"
            )

    @staticmethod
    def zero(ring: Ring, prec: int) -> "TruncatedLaurentSeries":
        """Zero series known down to prec."""
        return TruncatedLaurentSeries(prec - 1, prec, (), ring)

    @staticmethod
    def from_powers(
        values: Sequence[Any], ring: Ring, top: int = -1
    ) -> "TruncatedLaurentSeries":
        """Series with values[l] at exponent top - l."""

        coeffs = tuple(ring.coerce(value) for value in values)
        return TruncatedLaurentSeries(top, top - len(coeffs) + 1, coeffs, ring)

    @staticmethod
    def from_exponents(
        terms: Mapping[int, Any], ring: Ring, prec: int
    ) -> "TruncatedLaurentSeries":
        """Series from {exponent: value}; terms below prec are dropped."""

        kept = {e: ring.coerce(c) for e, c in terms.items() if e >= prec}
        if not kept:
            return TruncatedLaurentSeries.zero(ring, prec)
        hi = max(kept)
        coeffs = tuple(kept.get(e, ring.zero()) for e in range(hi, prec - 1, -1))
        return TruncatedLaurentSeries(hi, prec, coeffs, ring)

    @staticmethod
    def constant(value: Any, ring: Ring, prec: int) -> "TruncatedLaurentSeries":
        """Constant c known down to prec (prec <= 0)."""
        return TruncatedLaurentSeries.from_exponents({0: value}, ring, prec)

    @staticmethod
    def monomial(
        value: Any, exponent: int, ring: Ring, prec: int
    ) -> "TruncatedLaurentSeries":
        """c * z^exponent known down to prec."""
        return TruncatedLaurentSeries.from_exponents({exponent: value}, ring, prec)

    @property
    def width(self) -> int:
        """Number of stored coefficients."""
        return self.hi - self.prec + 1

    @property
    def scale(self) -> float:
        """Largest stored magnitude, as a float."""
        return float(max((abs(c) for c in self.coeffs), default=0))

    def coefficient(self, exponent: int) -> Scalar:
        """[z^exponent] of the series."""

        if exponent > self.hi:
            return self.ring.zero()
        if exponent < self.prec:
            raise PrecisionMiss(
                f"z^{exponent} requested, series known down to z^{self.prec}"
            )
        return self.coeffs[self.hi - exponent]

    def powers(self) -> List[Scalar]:
        """Coefficients of z^-1, z^-2, ..., z^prec."""
        return [self.coefficient(e) for e in range(-1, self.prec - 1, -1)]

    @property
    def degree(self) -> Degree:
        """Top nonzero exponent, MINUS_INFINITY for the zero series."""

        scale = self.scale
        for offset, value in enumerate(self.coeffs):
            if not self.ring.is_zero(value, scale):
                return self.hi - offset
        return MINUS_INFINITY

    def trimmed(self) -> "TruncatedLaurentSeries":
        """Same series with hi lowered to the degree."""

        degree = self.degree
        if degree == MINUS_INFINITY:
            return TruncatedLaurentSeries.zero(self.ring, self.prec)
        return TruncatedLaurentSeries(
            int(degree), self.prec, self.coeffs[self.hi - int(degree):], self.ring
        )

    def truncate(self, prec: int) -> "TruncatedLaurentSeries":
        """Forget every coefficient below prec."""

        if prec <= self.prec:
            return self
        if prec > self.hi:
            return TruncatedLaurentSeries.zero(self.ring, prec)
        return TruncatedLaurentSeries(
            self.hi, prec, self.coeffs[: self.hi - prec + 1], self.ring
        )

    def shift(self, exponent: int) -> "TruncatedLaurentSeries":
        """Multiply by z^exponent."""
        return TruncatedLaurentSeries(
            self.hi + exponent, self.prec + exponent, self.coeffs, self.ring
        )

    def map(self, func: Callable[[Scalar], Scalar]) -> "TruncatedLaurentSeries":
        """Apply func to every stored coefficient."""
        return TruncatedLaurentSeries(
            self.hi, self.prec, tuple(func(c) for c in self.coeffs), self.ring
        )

    def scaled(self, value: Any) -> "TruncatedLaurentSeries":
        """Multiply by a scalar."""

        factor = self.ring.coerce(value)
        return self.map(lambda c: c * factor)

    def evaluate(self, point: complex) -> complex:
        """Sum the stored part at a numeric point."""
        return sum(
            (complex(c) * point ** (self.hi - offset) for offset, c in enumerate(self.coeffs)),
            complex(0),
        )

    def max_abs(self, floor: Optional[int] = None) -> Union[Fraction, float]:
        """Largest coefficient magnitude at exponents >= floor."""

        floor = self.prec if floor is None else max(floor, self.prec)
        values = [_magnitude(self.coefficient(e)) for e in range(self.hi, floor - 1, -1)]
        return max(values, default=Fraction(0) if self.ring.exact else 0.0)

    def equal_to_precision(
        self, other: "TruncatedLaurentSeries", floor: Optional[int] = None
    ) -> bool:
        """Compare every exponent >= floor (default: shared floor)."""
        return equal_to_precision(self, other, floor)

    def _lift(self, other: Any) -> "TruncatedLaurentSeries":
        if isinstance(other, TruncatedLaurentSeries):
            return other
        return TruncatedLaurentSeries.constant(other, self.ring, min(self.prec, 0))

    def __add__(self, other: Any) -> "TruncatedLaurentSeries":
        return add(self, self._lift(other))

    __radd__ = __add__

    def __neg__(self) -> "TruncatedLaurentSeries":
        return self.map(lambda c: -c)

    def __sub__(self, other: Any) -> "TruncatedLaurentSeries":
        return add(self, -self._lift(other))

    def __rsub__(self, other: Any) -> "TruncatedLaurentSeries":
        return add(self._lift(other), -self)

    def __mul__(self, other: Any) -> "TruncatedLaurentSeries":
        if isinstance(other, TruncatedLaurentSeries):
            return mul(self, other)
        return self.scaled(other)

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "TruncatedLaurentSeries":
        if isinstance(other, TruncatedLaurentSeries):
            return mul(self, invert(other))
        return self.scaled(self.ring.one() / self.ring.coerce(other))

    def __rtruediv__(self, other: Any) -> "TruncatedLaurentSeries":
        return invert(self).scaled(other)

    def __repr__(self) -> str:
        return f"TruncatedLaurentSeries({self})"

    def __str__(self) -> str:
        terms = []
        for offset, value in enumerate(self.coeffs):
            if self.ring.is_zero(value):
                continue
            terms.append(f"{_format_scalar(value)}·z^{self.hi - offset}")
        terms.append(f"O(z^{self.prec - 1})")
        return " + ".join(terms)

    def as_dict(self) -> Dict[str, Any]:
        """JSON form, coefficients from hi downward."""
        return {
            "hi": self.hi,
            "prec": self.prec,
            "coeffs": [self.ring.serialize(c) for c in self.coeffs],
        }

    @staticmethod
    def from_dict(data: Dict[str, Any], ring: Ring) -> "TruncatedLaurentSeries":
        """Transform document to TruncatedLaurentSeries."""

        LOGGER.debug("TruncatedLaurentSeries=%s", data)

        return TruncatedLaurentSeries(
            hi=int(data["hi"]),
            prec=int(data["prec"]),
            coeffs=tuple(ring.coerce(c) for c in data["coeffs"]),
            ring=ring,
        )


def _format_scalar(value: Scalar) -> str:
    if isinstance(value, Fraction):
        return str(value)
    if value.imag == 0:
        return f"{value.real:.17g}"
    return f"({value.real:.17g}{value.imag:+.17g}j)"


def _same_ring(a: TruncatedLaurentSeries, b: TruncatedLaurentSeries) -> Ring:
    if not isinstance(a, TruncatedLaurentSeries) or not isinstance(
        b, TruncatedLaurentSeries
    ):
        raise RingMismatch("Operands must both be series")
    return ring_of(a.ring, b.ring)


def add(a: TruncatedLaurentSeries, b: TruncatedLaurentSeries) -> TruncatedLaurentSeries:
    """Sum; known down to the larger precision floor."""

    ring = _same_ring(a, b)
    prec = max(a.prec, b.prec)
    hi = max(a.hi, b.hi)
    if hi < prec:
        return TruncatedLaurentSeries.zero(ring, prec)
    coeffs = tuple(a.coefficient(e) + b.coefficient(e) for e in range(hi, prec - 1, -1))
    return TruncatedLaurentSeries(hi, prec, coeffs, ring)


def mul(a: TruncatedLaurentSeries, b: TruncatedLaurentSeries) -> TruncatedLaurentSeries:
    """Product with contaminated low coefficients dropped.

    hi and prec follow hi_a + hi_b and max(prec_a + hi_b, prec_b + hi_a),
    with hi read after leading zeros are removed.
    """

    ring = _same_ring(a, b)
    a, b = a.trimmed(), b.trimmed()
    hi = a.hi + b.hi
    prec = max(a.prec + b.hi, b.prec + a.hi)
    if hi < prec:
        return TruncatedLaurentSeries.zero(ring, prec)

    coeffs = []
    for exponent in range(hi, prec - 1, -1):
        total = ring.zero()
        for t in range(max(a.prec, exponent - b.hi), min(a.hi, exponent - b.prec) + 1):
            total += a.coeffs[a.hi - t] * b.coeffs[b.hi - exponent + t]
        coeffs.append(total)
    return TruncatedLaurentSeries(hi, prec, tuple(coeffs), ring)


def invert(a: TruncatedLaurentSeries) -> TruncatedLaurentSeries:
    """Reciprocal of a series with nonzero leading coefficient.

    deg(1/a) = -deg(a) and the number of known coefficients is kept.
    """

    trimmed = a.trimmed()
    if trimmed.width == 0:
        raise ZeroLeadingCoefficient(f"Cannot invert {a}")

    degree, width, ring = trimmed.hi, trimmed.width, trimmed.ring
    lead = trimmed.coeffs[0]
    inverse_lead = ring.one() / lead
    out: List[Scalar] = [inverse_lead]
    for k in range(1, width):
        total = ring.zero()
        for t in range(1, k + 1):
            total += trimmed.coeffs[t] * out[k - t]
        out.append(-total * inverse_lead)
    return TruncatedLaurentSeries(-degree, -degree - width + 1, tuple(out), ring)


def coefficient(a: TruncatedLaurentSeries, exponent: int) -> Scalar:
    """[z^exponent] a."""
    return a.coefficient(exponent)


def degree_of(a: TruncatedLaurentSeries) -> Degree:
    """Degree, MINUS_INFINITY for the zero series."""
    return a.degree


def equal_to_precision(
    a: TruncatedLaurentSeries,
    b: TruncatedLaurentSeries,
    floor: Optional[int] = None,
) -> bool:
    """True when a and b agree at every exponent >= floor."""

    ring = _same_ring(a, b)
    floor = max(a.prec, b.prec) if floor is None else floor
    scale = max(a.scale, b.scale)
    return all(
        ring.close(a.coefficient(e), b.coefficient(e), scale)
        for e in range(max(a.hi, b.hi), floor - 1, -1)
    )


def first_difference(
    a: TruncatedLaurentSeries, b: TruncatedLaurentSeries
) -> Optional[int]:
    """Highest exponent where a and b differ above the shared floor."""

    ring = _same_ring(a, b)
    scale = max(a.scale, b.scale)
    for exponent in range(max(a.hi, b.hi), max(a.prec, b.prec) - 1, -1):
        if not ring.close(a.coefficient(exponent), b.coefficient(exponent), scale):
            return exponent
    return None


Entry = TruncatedLaurentSeries


@attr.s(frozen=True, eq=False, repr=False)
class SeriesMatrix:
    """Rectangular matrix of series in one ring."""

    entries: Tuple[Tuple[Entry, ...], ...] = attr.ib(
        converter=lambda rows: tuple(tuple(row) for row in rows)
    )
    ring: Ring = attr.ib()

    def __attrs_post_init__(self) -> None:
        if not self.entries or not self.entries[0]:
            raise ShapeMismatch("Series matrices need at least one row and column")
        if any(len(row) != len(self.entries[0]) for row in self.entries):
            raise ShapeMismatch("Ragged series matrix")
        for row in self.entries:
            for entry in row:
                ring_of(self.ring, entry.ring)

    @staticmethod
    def from_rows(rows: Sequence[Sequence[Entry]]) -> "SeriesMatrix":
        """Build from nested lists of series."""
        return SeriesMatrix(rows, rows[0][0].ring)

    @staticmethod
    def zero(rows: int, cols: int, ring: Ring, prec: int) -> "SeriesMatrix":
        """All-zero matrix known down to prec."""
        entry = TruncatedLaurentSeries.zero(ring, prec)
        return SeriesMatrix([[entry] * cols for _ in range(rows)], ring)

    @staticmethod
    def scalar_embed(
        value: Any, shape: Tuple[int, int], ring: Ring, prec: int
    ) -> "SeriesMatrix":
        """c on the main diagonal, zero elsewhere."""

        rows, cols = shape
        return SeriesMatrix(
            [
                [
                    TruncatedLaurentSeries.constant(value if i == j else 0, ring, prec)
                    for j in range(cols)
                ]
                for i in range(rows)
            ],
            ring,
        )

    @staticmethod
    def embed(values: Sequence[Sequence[Any]], ring: Ring, prec: int) -> "SeriesMatrix":
        """Matrix of scalars (or series) lifted into the series ring."""
        return SeriesMatrix(
            [
                [
                    value
                    if isinstance(value, TruncatedLaurentSeries)
                    else TruncatedLaurentSeries.constant(value, ring, prec)
                    for value in row
                ]
                for row in values
            ],
            ring,
        )

    @property
    def rows(self) -> int:
        """Row count."""
        return len(self.entries)

    @property
    def cols(self) -> int:
        """Column count."""
        return len(self.entries[0])

    @property
    def shape(self) -> Tuple[int, int]:
        """(rows, cols)."""
        return self.rows, self.cols

    def entry(self, i: int, j: int) -> Entry:
        """Entry (i, j)."""
        return self.entries[i][j]

    def cells(self) -> Iterable[Tuple[int, int, Entry]]:
        """(i, j, entry) in row-major order."""
        for i, row in enumerate(self.entries):
            for j, entry in enumerate(row):
                yield i, j, entry

    @property
    def prec(self) -> int:
        """Smallest entry precision floor."""
        return min(entry.prec for _, _, entry in self.cells())

    @property
    def floor(self) -> int:
        """Largest entry precision floor: every entry is known down to it."""
        return max(entry.prec for _, _, entry in self.cells())

    def map(self, func: Callable[[Entry], Entry]) -> "SeriesMatrix":
        """Apply func entrywise."""
        return SeriesMatrix([[func(e) for e in row] for row in self.entries], self.ring)

    def _conform(self, other: "SeriesMatrix") -> None:
        ring_of(self.ring, other.ring)
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} and {other.shape} differ")

    def __add__(self, other: "SeriesMatrix") -> "SeriesMatrix":
        return mat_add(self, other)

    def __sub__(self, other: "SeriesMatrix") -> "SeriesMatrix":
        self._conform(other)
        return SeriesMatrix(
            [
                [a - b for a, b in zip(row_a, row_b)]
                for row_a, row_b in zip(self.entries, other.entries)
            ],
            self.ring,
        )

    def __matmul__(self, other: "SeriesMatrix") -> "SeriesMatrix":
        return mat_mul(self, other)

    def equal_to_precision(
        self, other: "SeriesMatrix", floor: Optional[int] = None
    ) -> bool:
        """Entrywise equal_to_precision."""

        self._conform(other)
        return all(
            equal_to_precision(a, other.entry(i, j), floor)
            for i, j, a in self.cells()
        )

    def max_abs(self, floor: Optional[int] = None) -> Union[Fraction, float]:
        """Largest coefficient magnitude over all entries."""
        return max(entry.max_abs(floor) for _, _, entry in self.cells())

    def as_dict(self) -> Dict[str, Any]:
        """JSON form."""
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[entry.as_dict() for entry in row] for row in self.entries],
        }

    def __repr__(self) -> str:
        return f"SeriesMatrix({self.rows}x{self.cols}, {self.ring.value})"


def mat_add(a: SeriesMatrix, b: SeriesMatrix) -> SeriesMatrix:
    """Entrywise sum."""

    a._conform(b)
    return SeriesMatrix(
        [
            [add(x, y) for x, y in zip(row_a, row_b)]
            for row_a, row_b in zip(a.entries, b.entries)
        ],
        a.ring,
    )


def mat_mul(a: SeriesMatrix, b: SeriesMatrix) -> SeriesMatrix:
    """Matrix product in the series ring."""

    ring = ring_of(a.ring, b.ring)
    if a.cols != b.rows:
        raise ShapeMismatch(f"Cannot multiply {a.shape} by {b.shape}")
    out = []
    for i in range(a.rows):
        row = []
        for j in range(b.cols):
            total = mul(a.entry(i, 0), b.entry(0, j))
            for k in range(1, a.cols):
                total = add(total, mul(a.entry(i, k), b.entry(k, j)))
            row.append(total)
        out.append(row)
    return SeriesMatrix(out, ring)
