"""Weighted lattice paths with steps in -p..q.

Brute-force enumeration here is the ground truth the series engines are
checked against, so it stays deliberately simple.
"""

from collections import Counter
from typing import Dict, Iterator, List, Mapping, Optional, Tuple

import attr

from .band_spec import BandSpec
from .const import DEFAULT_PATH_BUDGET, LOGGER
from .errors import BudgetExceeded, InvalidInput
from .models import BandParameters, PathConstraint, Scalar

Label = Tuple[int, int]


@attr.s(frozen=True)
class LatticePath:
    """Height sequence i_0, ..., i_n."""

    heights: Tuple[int, ...] = attr.ib(converter=tuple)

    @heights.validator
    def _not_empty(self, attribute: attr.Attribute, value: Tuple[int, ...]) -> None:
        if not value:
            raise InvalidInput("A path has at least one vertex")

    @property
    def length(self) -> int:
        """Number of steps."""
        return len(self.heights) - 1

    @property
    def start(self) -> int:
        """First height."""
        return self.heights[0]

    @property
    def end(self) -> int:
        """Last height."""
        return self.heights[-1]

    @property
    def steps(self) -> Tuple[int, ...]:
        """Height differences."""
        return tuple(b - a for a, b in zip(self.heights, self.heights[1:]))

    def is_legal(self, params: BandParameters) -> bool:
        """Every step lies in -p..q."""
        return all(-params.p <= step <= params.q for step in self.steps)

    def shifted(self, offset: int) -> "LatticePath":
        """Same path moved offset units up."""
        return LatticePath(h + offset for h in self.heights)

    @staticmethod
    def parse(text: str) -> "LatticePath":
        """Read comma-separated heights."""
        try:
            return LatticePath(int(part) for part in text.split(","))
        except ValueError as error:
            raise InvalidInput(f"Cannot read path {text!r}") from error

    def __str__(self) -> str:
        return ",".join(str(h) for h in self.heights)


@attr.s(frozen=True)
class LabelMultiset:
    """Labels (k, m) of a path's steps with multiplicities."""

    counts: Mapping[Label, int] = attr.ib(converter=lambda c: dict(sorted(c.items())))

    @property
    def total(self) -> int:
        """Sum of multiplicities."""
        return sum(self.counts.values())

    def weight(self, spec: BandSpec) -> Scalar:
        """Product of spec values over the multiset."""

        result = spec.ring.one()
        for (k, m), multiplicity in self.counts.items():
            result *= spec.coefficient(k, m) ** multiplicity
        return result


def height_bounds(
    length: int, start: int, end: int, params: BandParameters
) -> Optional[Tuple[int, int]]:
    """Lowest and highest height a path start -> end of this length can touch."""

    if length < 0 or end - start > length * params.q or start - end > length * params.p:
        return None
    top = max(min(start + t * params.q, end + (length - t) * params.p) for t in range(length + 1))
    bottom = min(
        max(start - t * params.p, end - (length - t) * params.q) for t in range(length + 1)
    )
    return bottom, top


def _reachable(height: int, end: int, remaining: int, params: BandParameters) -> bool:
    return end - height <= remaining * params.q and height - end <= remaining * params.p


def iterate_paths(
    length: int,
    start: int,
    end: int,
    constraint: PathConstraint,
    params: BandParameters,
    budget: int = DEFAULT_PATH_BUDGET,
) -> Iterator[LatticePath]:
    """Yield the collection in lexicographic order of heights."""

    constraint.require(start, end)
    if length < 0 or not _reachable(start, end, length, params):
        return

    produced = 0
    heights = [start]

    def walk(remaining: int) -> Iterator[LatticePath]:
        nonlocal produced
        if remaining == 0:
            produced += 1
            if produced > budget:
                raise BudgetExceeded(f"More than {budget} paths requested")
            yield LatticePath(heights)
            return
        current = heights[-1]
        for step in params.steps:
            nxt = current + step
            if constraint.admits(nxt) and _reachable(nxt, end, remaining - 1, params):
                heights.append(nxt)
                yield from walk(remaining - 1)
                heights.pop()

    yield from walk(length)


def enumerate_paths(
    length: int,
    start: int,
    end: int,
    constraint: PathConstraint,
    params: BandParameters,
    budget: int = DEFAULT_PATH_BUDGET,
) -> List[LatticePath]:
    """All legal paths of the collection, in canonical order."""
    return list(iterate_paths(length, start, end, constraint, params, budget))


def path_weight(path: LatticePath, spec: BandSpec) -> Scalar:
    """Product of a_min(y, y')^(y' - y) over the steps."""

    result = spec.ring.one()
    for a, b in zip(path.heights, path.heights[1:]):
        result *= spec.coefficient(b - a, min(a, b))
    return result


def _check_window(
    length: int, start: int, end: int, constraint: PathConstraint, spec: BandSpec
) -> None:
    bounds = height_bounds(length, start, end, spec.params)
    if bounds is None:
        return
    low, high = constraint.bounds
    bottom = bounds[0] if low is None else max(bounds[0], low)
    top = bounds[1] if high is None else min(bounds[1], high)
    spec.check_heights(bottom, top)


def collection_summary(
    length: int,
    start: int,
    end: int,
    constraint: PathConstraint,
    spec: BandSpec,
    budget: int = DEFAULT_PATH_BUDGET,
) -> Tuple[int, Scalar]:
    """Cardinality and weight polynomial of the collection."""

    _check_window(length, start, end, constraint, spec)
    count, total = 0, spec.ring.zero()
    for path in iterate_paths(length, start, end, constraint, spec.params, budget):
        count += 1
        total += path_weight(path, spec)

    LOGGER.debug(
        "Collection %s length=%s %s->%s: %s paths", constraint.kind.value, length, start, end, count
    )
    return count, total


def weight_polynomial_brute(
    length: int,
    start: int,
    end: int,
    constraint: PathConstraint,
    spec: BandSpec,
    budget: int = DEFAULT_PATH_BUDGET,
) -> Scalar:
    """Sum of path weights over the collection."""
    return collection_summary(length, start, end, constraint, spec, budget)[1]


def reflect_path(path: LatticePath) -> LatticePath:
    """Reverse, negate and shift one unit down."""
    return LatticePath(-h - 1 for h in reversed(path.heights))


def label_multiset(path: LatticePath) -> LabelMultiset:
    """Step labels (k, m) = (y' - y, min(y, y'))."""
    return LabelMultiset(
        Counter((b - a, min(a, b)) for a, b in zip(path.heights, path.heights[1:]))
    )


def height_range(path: LatticePath) -> Tuple[int, int]:
    """(min, max) of the heights."""
    return min(path.heights), max(path.heights)


def central_window(ell: int, params: BandParameters) -> int:
    """Distance from the strip edges beyond which length-ell loops ignore them."""
    return (params.p * params.q * ell) // (params.p + params.q) + max(params.p, params.q) + 1


def paths_as_rows(paths: List[LatticePath], spec: Optional[BandSpec] = None) -> List[Dict]:
    """Rows for the paths report."""
    return [
        {"heights": list(path.heights)}
        if spec is None
        else {
            "heights": list(path.heights),
            "weight": spec.ring.serialize(path_weight(path, spec)),
        }
        for path in paths
    ]
