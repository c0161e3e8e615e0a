"""Value types shared across bandcf modules."""

from enum import Enum
from fractions import Fraction
from numbers import Number
from typing import Any, Optional, Tuple, Union

import attr

from .const import FLOAT_TOLERANCE, LOGGER, RING_COMPLEX, RING_RATIONAL
from .errors import IndexOutOfRange, InvalidInput, RingMismatch

Scalar = Union[Fraction, complex]


class Ring(Enum):
    """Coefficient ring tag."""

    RATIONAL = RING_RATIONAL
    COMPLEX = RING_COMPLEX

    @property
    def exact(self) -> bool:
        """Whether equality is exact."""
        return self is Ring.RATIONAL

    def zero(self) -> Scalar:
        """Additive identity."""
        return Fraction(0) if self.exact else complex(0)

    def one(self) -> Scalar:
        """Multiplicative identity."""
        return Fraction(1) if self.exact else complex(1)

    def coerce(self, value: Any) -> Scalar:
        """Convert a number or serialized scalar into this ring."""

        if self.exact:
            if isinstance(value, (complex, float)):
                raise RingMismatch(f"{value!r} is not a rational scalar")
            try:
                return Fraction(value)
            except (TypeError, ValueError) as error:
                raise InvalidInput(f"Cannot read rational {value!r}") from error

        if isinstance(value, (list, tuple)):
            if len(value) != 2:
                raise InvalidInput(f"Complex scalar needs [re, im], got {value!r}")
            return complex(float(value[0]), float(value[1]))
        if isinstance(value, str):
            return complex(float(Fraction(value)))
        if isinstance(value, Number):
            return complex(value)
        raise InvalidInput(f"Cannot read complex {value!r}")

    def check(self, value: Any) -> None:
        """Raise RingMismatch if value does not live in this ring."""

        if self.exact and not isinstance(value, (Fraction, int)):
            raise RingMismatch(f"{value!r} is not in the {self.value} ring")
        if not self.exact and isinstance(value, Fraction):
            raise RingMismatch(f"{value!r} is not in the {self.value} ring")

    def serialize(self, value: Scalar) -> Any:
        """Scalar to its JSON form."""

        if self.exact:
            value = Fraction(value)
            return f"{value.numerator}/{value.denominator}"
        value = complex(value)
        return [value.real, value.imag]

    def is_zero(self, value: Scalar, scale: float = 0.0) -> bool:
        """Zero test; float ring uses a scale-aware tolerance."""

        if self.exact:
            return value == 0
        return abs(value) <= FLOAT_TOLERANCE * (1.0 + scale)

    def close(self, left: Scalar, right: Scalar, scale: float = 0.0) -> bool:
        """Equality test under the ring's rules."""
        return self.is_zero(left - right, scale)


def ring_of(*rings: Ring) -> Ring:
    """Common ring of the operands."""

    first = rings[0]
    for other in rings[1:]:
        if other is not first:
            raise RingMismatch(f"Cannot mix {first.value} and {other.value} rings")
    return first


def _positive(instance: Any, attribute: attr.Attribute, value: int) -> None:
    if value < 1:
        raise InvalidInput(f"{attribute.name} must be >= 1, got {value}")


@attr.s(auto_attribs=True, frozen=True)
class BandParameters:
    """Number of sub- and superdiagonals."""

    p: int = attr.ib(validator=_positive)
    q: int = attr.ib(validator=_positive)

    @property
    def diagonals(self) -> range:
        """Diagonal indices -p..q."""
        return range(-self.p, self.q + 1)

    @property
    def steps(self) -> range:
        """Legal step deltas in ascending order."""
        return self.diagonals

    @staticmethod
    def from_dict(data: dict) -> "BandParameters":
        """Transform document to BandParameters."""

        LOGGER.debug("BandParameters=%s", data)

        return BandParameters(p=int(data["p"]), q=int(data["q"]))


class ConstraintKind(Enum):
    """Path collections."""

    NON_NEGATIVE = "d"
    FREE = "p"
    BELOW_MINUS_ONE = "dhat"
    BAND = "band"


@attr.s(auto_attribs=True, frozen=True)
class PathConstraint:
    """Height restriction of a path collection."""

    kind: ConstraintKind
    ceiling: Optional[int] = None

    def __attrs_post_init__(self) -> None:
        if self.kind is ConstraintKind.BAND and (
            self.ceiling is None or self.ceiling < 0
        ):
            raise InvalidInput("Band constraint needs a ceiling n-1 >= 0")

    @staticmethod
    def non_negative() -> "PathConstraint":
        """Paths never below height 0."""
        return PathConstraint(ConstraintKind.NON_NEGATIVE)

    @staticmethod
    def free() -> "PathConstraint":
        """Unrestricted paths."""
        return PathConstraint(ConstraintKind.FREE)

    @staticmethod
    def below_minus_one() -> "PathConstraint":
        """Paths never above height -1."""
        return PathConstraint(ConstraintKind.BELOW_MINUS_ONE)

    @staticmethod
    def band(n: int) -> "PathConstraint":
        """Paths inside the strip 0..n-1."""
        return PathConstraint(ConstraintKind.BAND, n - 1)

    @staticmethod
    def parse(text: str) -> "PathConstraint":
        """Read d, p, dhat or band:N."""

        name, _, size = text.partition(":")
        try:
            kind = ConstraintKind(name)
        except ValueError as error:
            raise InvalidInput(f"Unknown constraint {text!r}") from error
        if kind is ConstraintKind.BAND:
            if not size.isdigit():
                raise InvalidInput(f"Band constraint needs a size, got {text!r}")
            return PathConstraint.band(int(size))
        return PathConstraint(kind)

    @property
    def bounds(self) -> Tuple[Optional[int], Optional[int]]:
        """Inclusive (floor, ceiling); None for unbounded."""

        return {
            ConstraintKind.NON_NEGATIVE: (0, None),
            ConstraintKind.FREE: (None, None),
            ConstraintKind.BELOW_MINUS_ONE: (None, -1),
            ConstraintKind.BAND: (0, self.ceiling),
        }[self.kind]

    def admits(self, height: int) -> bool:
        """Whether a height is allowed."""

        low, high = self.bounds
        return (low is None or height >= low) and (high is None or height <= high)

    def require(self, *heights: int) -> None:
        """Raise if an endpoint lies outside the strip."""

        for height in heights:
            if not self.admits(height):
                raise IndexOutOfRange(
                    f"Height {height} is outside the {self.kind.value} strip"
                )


class Family(Enum):
    """Generating series families."""

    A = "a"
    AK = "ak"
    W = "w"
    V = "v"
    ZETA = "zeta"
    RN = "rn"


class Flavor(Enum):
    """Continued fraction flavors."""

    ALPHA = "alpha"
    BETA = "beta"
    RHO = "rho"
    NU = "nu"


class TailKind(Enum):
    """Continued fraction tails."""

    EXACT = "exact"
    ZERO = "zero"
    DIAG = "diag"
