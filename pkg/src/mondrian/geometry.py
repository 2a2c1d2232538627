"""Spatial relationships between axis-aligned cell rectangles.

Two rectangles relate through a feature vector (alignment direction,
alignment magnitude, distance). Direction V means the row ranges
intersect, H means the column ranges intersect, O means both do (the
boxes overlap), N means neither. Distances are measured in empty grid
lines between the boxes, so touching rectangles are at distance zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

__all__ = [
    "Rect",
    "Direction",
    "SpatialRelation",
    "PairClass",
    "IllegalOverlapError",
    "relation",
    "classify_pair",
    "is_apparently_separated",
]


class IllegalOverlapError(ValueError):
    """Raised when two rectangles overlap where overlap is not allowed."""


class Direction(str, Enum):
    V = "V"
    H = "H"
    N = "N"
    O = "O"


@dataclass(frozen=True)
class Rect:
    """Axis-aligned rectangle over cell indices, bounds inclusive."""

    x0: int
    y0: int
    x1: int
    y1: int

    def __post_init__(self) -> None:
        if self.x0 > self.x1 or self.y0 > self.y1:
            raise ValueError(f"invalid rectangle bounds {self!r}")

    @property
    def width(self) -> int:
        return self.x1 - self.x0 + 1

    @property
    def height(self) -> int:
        return self.y1 - self.y0 + 1

    @property
    def area(self) -> int:
        return self.width * self.height

    def cells(self) -> Iterable[tuple[int, int]]:
        for y in range(self.y0, self.y1 + 1):
            for x in range(self.x0, self.x1 + 1):
                yield (x, y)

    def contains(self, x: int, y: int) -> bool:
        return self.x0 <= x <= self.x1 and self.y0 <= y <= self.y1


@dataclass(frozen=True)
class SpatialRelation:
    direction: Direction
    magnitude: float
    distance: float


@dataclass(frozen=True)
class _Ranges:
    x_overlap: bool
    y_overlap: bool
    x_span: int  # min(x1) - max(x0) + 1; positive iff columns shared
    y_span: int


def _ranges(a: Rect, b: Rect) -> _Ranges:
    x_span = min(a.x1, b.x1) - max(a.x0, b.x0) + 1
    y_span = min(a.y1, b.y1) - max(a.y0, b.y0) + 1
    return _Ranges(x_span > 0, y_span > 0, x_span, y_span)


def relation(a: Rect, b: Rect, allow_overlap: bool = False) -> SpatialRelation:
    """Compute the (direction, magnitude, distance) feature vector.

    For V/H alignment the magnitude is the number of shared rows/columns
    and the distance is the gap along the free axis. For N the distance
    combines both gaps Euclideanly. Overlapping boxes yield direction O
    with the overlap area as magnitude and distance 0, or raise
    ``IllegalOverlapError`` when ``allow_overlap`` is false (element
    rectangles can never overlap; region boundaries can).
    """
    r = _ranges(a, b)
    if r.x_overlap and r.y_overlap:
        if not allow_overlap:
            raise IllegalOverlapError(f"rectangles {a} and {b} overlap")
        return SpatialRelation(Direction.O, float(r.x_span * r.y_span), 0.0)
    if r.y_overlap:
        return SpatialRelation(Direction.V, float(r.y_span), float(abs(r.x_span)))
    if r.x_overlap:
        return SpatialRelation(Direction.H, float(r.x_span), float(abs(r.y_span)))
    return SpatialRelation(
        Direction.N, 0.0, math.hypot(abs(r.x_span), abs(r.y_span))
    )


class PairClass(str, Enum):
    SEPARATED = "separated"
    ADJACENT = "adjacent"
    OVERLAPPING = "overlapping"


def classify_pair(r1: Rect, r2: Rect) -> PairClass:
    """Classify a pair of region boundaries as separated/adjacent/overlapping.

    Overlapping: direction O. Adjacent: H or V alignment at distance 0.
    Everything else is separated; this includes the corner-touch case
    (direction N at distance 0), which shares no edge.
    """
    rel = relation(r1, r2, allow_overlap=True)
    if rel.direction is Direction.O and rel.magnitude > 0:
        return PairClass.OVERLAPPING
    if (
        rel.direction in (Direction.H, Direction.V)
        and rel.magnitude > 0
        and rel.distance == 0
    ):
        return PairClass.ADJACENT
    return PairClass.SEPARATED


def is_apparently_separated(region_elements: Sequence[Rect]) -> bool:
    """True iff some element sits at positive distance from all the others.

    A single-element region is never apparently separated.
    """
    if len(region_elements) < 2:
        return False
    for i, e in enumerate(region_elements):
        others = [o for j, o in enumerate(region_elements) if j != i]
        if all(relation(e, o).distance > 0 for o in others):
            return True
    return False
