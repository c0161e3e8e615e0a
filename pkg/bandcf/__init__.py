"""The bandcf package: banded resolvents, lattice paths and matrix continued fractions."""

from .band_spec import BandSpec, CoefficientWindow
from .ensemble import DistributionDescriptor, EnsembleSpec
from .errors import BandcfException
from .laurent_series import SeriesMatrix, TruncatedLaurentSeries
from .lattice_paths import LatticePath
from .models import BandParameters, Family, Flavor, PathConstraint, Ring, TailKind

__all__ = [
    "BandParameters",
    "BandSpec",
    "BandcfException",
    "CoefficientWindow",
    "DistributionDescriptor",
    "EnsembleSpec",
    "Family",
    "Flavor",
    "LatticePath",
    "PathConstraint",
    "Ring",
    "SeriesMatrix",
    "TailKind",
    "TruncatedLaurentSeries",
]
