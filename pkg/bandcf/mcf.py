"""Matrix continued fractions built from banded matrices.

One level is X -> 1 / (lin + left X right), where 1/B is the inverse of the
T transform. The four flavors only differ in which banded matrix the level
coefficients are read from: H (alpha), K (beta), H_n (rho) or E (nu).
"""

from typing import Any, Callable, List, Optional

import attr

from .band_spec import BandSpec
from .const import LOGGER
from .errors import IndexOutOfRange, InvalidInput, ShapeMismatch, ZeroLeadingCoefficient
from .laurent_series import SeriesMatrix, TruncatedLaurentSeries, invert
from .models import Family, Flavor, Ring, TailKind
from .resolvent import KOperator, SpecOperator, build_k, operator_matrix, series_matrix

Series = TruncatedLaurentSeries


def _invert(entry: Series, what: str) -> Series:
    try:
        return invert(entry)
    except ZeroLeadingCoefficient as error:
        raise ZeroLeadingCoefficient(f"{what} is not invertible: {entry}") from error


def transform_t(a: SeriesMatrix) -> SeriesMatrix:
    """B = T(A) for a q x p matrix with invertible a_00."""

    q, p = a.shape
    a00 = _invert(a.entry(0, 0), "a_00")
    rows: List[List[Series]] = []
    for i in range(q - 1):
        row = [
            a.entry(i + 1, j + 1) - a.entry(0, j + 1) * a.entry(i + 1, 0) * a00
            for j in range(p - 1)
        ]
        row.append(a.entry(i + 1, 0) * a00)
        rows.append(row)
    last = [-(a.entry(0, j + 1) * a00) for j in range(p - 1)]
    last.append(a00)
    rows.append(last)
    return SeriesMatrix(rows, a.ring)


def transform_t_inv(b: SeriesMatrix) -> SeriesMatrix:
    """A = 1/B, the matrix with T(A) = B."""

    q, p = b.shape
    corner = b.entry(q - 1, p - 1)
    inverse = _invert(corner, "b_(q-1,p-1)")
    first = [inverse] + [-(b.entry(q - 1, j - 1) * inverse) for j in range(1, p)]
    rows = [first]
    for i in range(1, q):
        row = [b.entry(i - 1, p - 1) * inverse]
        for j in range(1, p):
            row.append(
                b.entry(i - 1, j - 1)
                - b.entry(i - 1, p - 1) * b.entry(q - 1, j - 1) * inverse
            )
        rows.append(row)
    return SeriesMatrix(rows, b.ring)


@attr.s(auto_attribs=True, frozen=True)
class CFLevelCoefficients:
    """lin (q x p), left (q x q) and right (p x p) of one level."""

    lin: SeriesMatrix
    left: SeriesMatrix
    right: SeriesMatrix
    flavor: Flavor
    k: int

    def __attrs_post_init__(self) -> None:
        q, p = self.lin.shape
        if self.left.shape != (q, q) or self.right.shape != (p, p):
            raise ShapeMismatch(
                f"Level shapes {self.lin.shape}, {self.left.shape}, {self.right.shape}"
            )

    def apply(self, inner: SeriesMatrix) -> SeriesMatrix:
        """1 / (lin + left inner right)."""
        return transform_t_inv(self.lin + self.left @ inner @ self.right)


@attr.s
class LevelContext:
    """Spec plus what the flavors need: series width, truncation size."""

    spec: BandSpec = attr.ib()
    width: int = attr.ib()
    n: Optional[int] = attr.ib(default=None)
    _k_operator: Optional[KOperator] = attr.ib(default=None, init=False)

    @property
    def ring(self) -> Ring:
        """Coefficient ring."""
        return self.spec.ring

    @property
    def floor(self) -> int:
        """Precision given to embedded constants."""
        return -4 * self.width - 8

    @property
    def k_operator(self) -> KOperator:
        """K at this width, built once."""
        if self._k_operator is None:
            self._k_operator = build_k(self.spec, self.width)
        return self._k_operator

    def require_n(self) -> int:
        """Truncation size for rho."""
        if self.n is None or self.n < 1:
            raise InvalidInput("rho needs a truncation size n >= 1")
        return self.n

    def source(self, flavor: Flavor) -> Callable[[int, int], Any]:
        """Entry provider of the banded matrix behind a flavor."""

        if flavor is Flavor.ALPHA:
            return self.spec.entry_h
        if flavor is Flavor.BETA:
            return self.k_operator.entry
        if flavor is Flavor.NU:
            return self.spec.reflect().entry_h
        return SpecOperator(self.spec, cutoff=self.require_n()).entry

    def lift(self, value: Any) -> Series:
        """Scalar or series as a series."""
        if isinstance(value, TruncatedLaurentSeries):
            return value
        return TruncatedLaurentSeries.constant(value, self.ring, self.floor)


def level_coefficients(flavor: Flavor, k: int, ctx: LevelContext) -> CFLevelCoefficients:
    """Level k coefficients read off row and column k of the flavor's matrix."""

    if k < 0:
        raise IndexOutOfRange(f"Level must be >= 0, got {k}")
    p, q, ring = ctx.spec.p, ctx.spec.q, ctx.ring
    entry = ctx.source(flavor)
    zero = ctx.lift(ring.zero())
    one = ctx.lift(ring.one())

    lin = [[zero] * p for _ in range(q)]
    z = TruncatedLaurentSeries.monomial(1, 1, ring, ctx.floor)
    lin[q - 1][p - 1] = z - ctx.lift(entry(k, k))

    left = [[one if r == c else zero for c in range(q)] for r in range(q)]
    left[q - 1] = [-ctx.lift(entry(k, k + i)) for i in range(1, q + 1)]

    right = [[one if r == c else zero for c in range(p)] for r in range(p)]
    for r in range(p):
        right[r][p - 1] = ctx.lift(entry(k + r + 1, k))

    return CFLevelCoefficients(
        lin=SeriesMatrix(lin, ring),
        left=SeriesMatrix(left, ring),
        right=SeriesMatrix(right, ring),
        flavor=flavor,
        k=k,
    )


def cf_levels(flavor: Flavor, count: int, ctx: LevelContext, start: int = 0) -> List[CFLevelCoefficients]:
    """Levels start..start+count-1."""
    return [level_coefficients(flavor, k, ctx) for k in range(start, start + count)]


def tail_matrix(kind: TailKind, flavor: Flavor, k: int, ctx: LevelContext) -> SeriesMatrix:
    """Tail placed below level k-1."""

    spec, width = ctx.spec, ctx.width
    p, q, ring = spec.p, spec.q, ctx.ring
    if kind is TailKind.ZERO:
        return SeriesMatrix.zero(q, p, ring, -width)
    if kind is TailKind.DIAG:
        inverse_z = TruncatedLaurentSeries.monomial(1, -1, ring, -width)
        empty = TruncatedLaurentSeries.zero(ring, -width)
        return SeriesMatrix(
            [[inverse_z if i == j else empty for j in range(p)] for i in range(q)], ring
        )

    if flavor is Flavor.ALPHA:
        return series_matrix(Family.A, q, p, width, spec.shift(k))
    if flavor is Flavor.NU:
        return series_matrix(Family.A, q, p, width, spec.reflect().shift(k))
    if flavor is Flavor.BETA:
        return operator_matrix(ctx.k_operator.shifted(k), q, p, width)
    n = ctx.require_n()
    return operator_matrix(SpecOperator(spec.shift(k), cutoff=n - k), q, p, width)


def target_matrix(flavor: Flavor, ctx: LevelContext) -> SeriesMatrix:
    """The matrix a flavor's continued fraction expands: F, G, R_n or V."""
    return tail_matrix(TailKind.EXACT, flavor, 0, ctx)


def eval_cf(levels: List[CFLevelCoefficients], tail: SeriesMatrix) -> SeriesMatrix:
    """Fold levels innermost-out onto the tail."""

    current = tail
    for level in reversed(levels):
        try:
            current = level.apply(current)
        except ZeroLeadingCoefficient as error:
            raise ZeroLeadingCoefficient(str(error), level=level.k) from error
        LOGGER.debug("Folded %s level %s", level.flavor.value, level.k)
    return current


def expand(
    flavor: Flavor, count: int, tail: TailKind, ctx: LevelContext
) -> SeriesMatrix:
    """Continued fraction with `count` levels and the named tail."""
    return eval_cf(cf_levels(flavor, count, ctx), tail_matrix(tail, flavor, count, ctx))


def agreement_depth(approx: SeriesMatrix, exact: SeriesMatrix) -> int:
    """Number of leading z^-1, z^-2, ... coefficients shared by every entry."""

    floor = max(approx.floor, exact.floor)
    depth = -floor
    for i, j, entry in approx.cells():
        other = exact.entry(i, j)
        for m in range(1, -floor + 1):
            if not ring_close(entry, other, -m):
                depth = min(depth, m - 1)
                break
    return depth


def ring_close(a: Series, b: Series, exponent: int) -> bool:
    """Coefficients of z^exponent agree."""
    scale = max(a.scale, b.scale)
    return a.ring.close(a.coefficient(exponent), b.coefficient(exponent), scale)


def scalar_double_cf(
    spec: BandSpec, depth_plus: int, depth_minus: int, width: int
) -> TruncatedLaurentSeries:
    """W_00 for p = q = 1 as a two-sided continued fraction.

    The branch below the axis is the J-fraction for V_(-1,-1) with
    depth_minus levels; the main branch has depth_plus levels.
    """

    if spec.p != 1 or spec.q != 1:
        raise ShapeMismatch(f"Double continued fraction needs p = q = 1, got ({spec.p}, {spec.q})")
    if depth_plus < 1 or depth_minus < 0:
        raise InvalidInput("Need depth_plus >= 1 and depth_minus >= 0")

    ring, floor = spec.ring, -width - 4
    z = TruncatedLaurentSeries.monomial(1, 1, ring, floor)

    def a(k: int, m: int) -> Any:
        return spec.coefficient(k, m)

    below = TruncatedLaurentSeries.zero(ring, floor)
    for m in range(depth_minus, 0, -1):
        below = invert(z - a(0, -m) - below * (a(1, -m - 1) * a(-1, -m - 1)))

    corner = below * (a(-1, -1) * a(1, -1)) + a(0, 0)

    above = TruncatedLaurentSeries.zero(ring, floor)
    for k in range(depth_plus - 1, 0, -1):
        above = invert(z - a(0, k) - above * (a(1, k) * a(-1, k)))

    result = invert(z - corner - above * (a(1, 0) * a(-1, 0)))
    LOGGER.debug("Double continued fraction depths +%s -%s", depth_plus, depth_minus)
    return TruncatedLaurentSeries.from_powers(
        [result.coefficient(e) for e in range(-1, -width - 1, -1)], ring
    )
