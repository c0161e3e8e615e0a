"""Exceptions raised by bandcf."""

from typing import Optional


class BandcfException(Exception):
    """Bandcf Exception."""


class InvalidInput(BandcfException):
    """Input document or argument failed validation."""


class WindowMiss(BandcfException):
    """Coefficient index outside a finite window without default."""

    def __init__(self, k: int, n: int, lo: int, hi: int) -> None:
        """Initialize."""
        super().__init__(
            f"a_{n}^({k}) is outside the window [{lo}, {hi}] and no default is set"
        )
        self.k = k
        self.n = n


class RingMismatch(BandcfException):
    """Operands belong to different coefficient rings."""


class ZeroLeadingCoefficient(BandcfException):
    """Series is not invertible at the stored precision."""

    def __init__(self, message: str, level: Optional[int] = None) -> None:
        """Initialize."""
        if level is not None:
            message = f"level {level}: {message}"
        super().__init__(message)
        self.level = level


class PrecisionMiss(BandcfException):
    """Coefficient read below the precision floor."""


class ShapeMismatch(BandcfException):
    """Matrix shapes are not conformable."""


class BudgetExceeded(BandcfException):
    """Brute-force enumeration exceeded its path budget."""


class ExactRingRequired(BandcfException):
    """Operation is only defined over the rational ring."""


class IndexOutOfRange(BandcfException):
    """Index outside the admissible range."""


class UnknownSuite(BandcfException):
    """Verify suite name is not registered."""
