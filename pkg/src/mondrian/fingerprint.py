"""Region fingerprints: color histograms and their cross-correlation.

Every cell inside a region's bounding box (empty cells included; the
density of white is part of the signature) maps to its type color, and
the three 8-bit channels are histogrammed independently with 64 bins
each. Two fingerprints are compared by Pearson correlation, clamped to
[0, 1]; identical type patterns score exactly 1 regardless of literal
cell content.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

import numpy as np

from .geometry import Rect
from .grid import TYPE_COLORS, TypedGrid

if TYPE_CHECKING:
    from .cluster import Region

__all__ = [
    "BINS_PER_CHANNEL",
    "TOTAL_BINS",
    "Fingerprint",
    "fingerprint",
    "fingerprint_box",
    "region_similarity",
]

BINS_PER_CHANNEL = 64
TOTAL_BINS = 3 * BINS_PER_CHANNEL
_BIN_WIDTH = 256 // BINS_PER_CHANNEL

# per-type bin indices into the concatenated (R | G | B) histogram
_TYPE_BINS = {
    t: (
        rgb[0] // _BIN_WIDTH,
        BINS_PER_CHANNEL + rgb[1] // _BIN_WIDTH,
        2 * BINS_PER_CHANNEL + rgb[2] // _BIN_WIDTH,
    )
    for t, rgb in TYPE_COLORS.items()
}


@dataclass(eq=False)
class Fingerprint:
    """Unit-sum histogram of 192 bins (64 per channel) over a cell box."""

    bins: np.ndarray
    cell_count: int

    def to_list(self) -> list[float]:
        return [float(v) for v in self.bins]

    @classmethod
    def from_list(cls, bins: Sequence[float], cell_count: int = 0) -> "Fingerprint":
        values = np.asarray(bins, dtype=np.float64)
        if values.shape != (TOTAL_BINS,):
            raise ValueError(f"expected {TOTAL_BINS} bins, got {values.shape}")
        return cls(bins=values, cell_count=cell_count)


def fingerprint_box(box: Rect, grid: TypedGrid) -> Fingerprint:
    """Histogram the type colors of every cell inside the box."""
    if box.x0 < 0 or box.y0 < 0 or box.x1 >= grid.cols or box.y1 >= grid.rows:
        raise ValueError(f"box {box} exceeds grid bounds {grid.cols}x{grid.rows}")
    type_counts: Counter = Counter()
    for y in range(box.y0, box.y1 + 1):
        row = grid.cells[y]
        for x in range(box.x0, box.x1 + 1):
            type_counts[row[x]] += 1
    counts = np.zeros(TOTAL_BINS, dtype=np.float64)
    for cell_type, n in type_counts.items():
        for bin_index in _TYPE_BINS[cell_type]:
            counts[bin_index] += n
    return Fingerprint(bins=counts / counts.sum(), cell_count=box.area)


def fingerprint(region: "Region", grid: TypedGrid) -> Fingerprint:
    """Fingerprint of a region's bounding box."""
    return fingerprint_box(region.boundary, grid)


def region_similarity(f1: Fingerprint, f2: Fingerprint) -> float:
    """Pearson correlation of two histograms, negatives clamped to 0.

    Degenerate zero-variance histograms compare as 1 when identical and 0
    otherwise.
    """
    a, b = f1.bins, f2.bins
    if a.shape != b.shape:
        raise ValueError("fingerprints have different bin counts")
    da = a - a.mean()
    db = b - b.mean()
    denom = np.linalg.norm(da) * np.linalg.norm(db)
    if denom == 0:
        return 1.0 if np.allclose(a, b) else 0.0
    r = float(np.dot(da, db) / denom)
    return min(1.0, max(0.0, r))
