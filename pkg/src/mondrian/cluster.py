"""Density clustering of elements into regions.

Elements are compared with a weighted three-term distance (geometric gap,
size difference, misalignment). Clustering runs with a minimum cluster
size of one and no noise, so the regions at radius eps are exactly the
connected components of the graph joining element pairs within eps;
any algorithm producing that single-linkage partition is conformant, and
a union-find over the pairwise distance matrix is used here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Sequence

import numpy as np

from . import metrics
from .config import DEFAULT_ALPHA, DEFAULT_BETA, DEFAULT_GAMMA, DEFAULT_MIN_POINTS, DEFAULT_RADIUS
from .geometry import IllegalOverlapError, Rect, relation
from .segment import Element

if TYPE_CHECKING:
    from .fingerprint import Fingerprint

__all__ = [
    "ClusterParams",
    "Region",
    "element_distance",
    "pairwise_distances",
    "detect_regions",
    "sweep_radius",
    "select_radius",
]


@dataclass(frozen=True)
class ClusterParams:
    """Weights and radius for the element distance and clustering."""

    alpha: float = DEFAULT_ALPHA
    beta: float = DEFAULT_BETA
    gamma: float = DEFAULT_GAMMA
    epsilon: float = DEFAULT_RADIUS
    min_points: int = DEFAULT_MIN_POINTS

    def __post_init__(self) -> None:
        if min(self.alpha, self.beta, self.gamma) < 0:
            raise ValueError("weights must be non-negative")
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if self.min_points != 1:
            raise ValueError("min_points is fixed to 1 (no element is noise)")


@dataclass
class Region:
    """A cluster of elements; its boundary is their bounding box."""

    id: int
    elements: list[Element]
    boundary: Rect
    fingerprint: "Fingerprint | None" = field(default=None, compare=False)


def element_distance(a: Element, b: Element, p: ClusterParams) -> float:
    """Weighted sum of geometric gap, size difference, and misalignment.

    The misalignment term is the smaller of the corner-offset sums along
    the two axes, so elements that line up along either axis contribute
    nothing.
    """
    if (a.x0, a.y0, a.x1, a.y1) == (b.x0, b.y0, b.x1, b.y1):
        return 0.0
    geo = relation(a, b).distance
    area_a, area_b = a.area, b.area
    size_diff = 1.0 - min(area_a, area_b) / max(area_a, area_b)
    h = abs(a.y0 - b.y0) + abs(a.y1 - b.y1)
    v = abs(a.x0 - b.x0) + abs(a.x1 - b.x1)
    return p.alpha * geo + p.beta * size_diff + p.gamma * min(h, v)


def pairwise_distances(elements: Sequence[Element], p: ClusterParams) -> np.ndarray:
    """Full n x n matrix of element distances (vectorised)."""
    n = len(elements)
    x0 = np.array([e.x0 for e in elements], dtype=np.float64)
    y0 = np.array([e.y0 for e in elements], dtype=np.float64)
    x1 = np.array([e.x1 for e in elements], dtype=np.float64)
    y1 = np.array([e.y1 for e in elements], dtype=np.float64)

    x_span = np.minimum.outer(x1, x1) - np.maximum.outer(x0, x0) + 1
    y_span = np.minimum.outer(y1, y1) - np.maximum.outer(y0, y0) + 1
    x_over = x_span > 0
    y_over = y_span > 0
    both = x_over & y_over
    np.fill_diagonal(both, False)
    if both.any():
        i, j = np.argwhere(both)[0]
        raise IllegalOverlapError(f"elements {elements[i]} and {elements[j]} overlap")

    geo = np.where(
        y_over,
        np.abs(x_span),
        np.where(x_over, np.abs(y_span), np.hypot(np.abs(x_span), np.abs(y_span))),
    )
    np.fill_diagonal(geo, 0.0)

    area = (x1 - x0 + 1) * (y1 - y0 + 1)
    size_diff = 1.0 - np.minimum.outer(area, area) / np.maximum.outer(area, area)

    h = np.abs(np.subtract.outer(y0, y0)) + np.abs(np.subtract.outer(y1, y1))
    v = np.abs(np.subtract.outer(x0, x0)) + np.abs(np.subtract.outer(x1, x1))
    misalign = np.minimum(h, v)

    return p.alpha * geo + p.beta * size_diff + p.gamma * misalign


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i: int, j: int) -> None:
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            self.parent[rj] = ri


def _bounding_box(elements: Sequence[Element]) -> Rect:
    return Rect(
        min(e.x0 for e in elements),
        min(e.y0 for e in elements),
        max(e.x1 for e in elements),
        max(e.y1 for e in elements),
    )


def _regions_from_labels(elements: Sequence[Element], uf: _UnionFind) -> list[Region]:
    groups: dict[int, list[Element]] = {}
    for i, e in enumerate(elements):
        groups.setdefault(uf.find(i), []).append(e)
    regions = []
    for members in groups.values():
        members.sort(key=lambda e: (e.y0, e.x0, e.y1, e.x1))
        regions.append(Region(id=-1, elements=members, boundary=_bounding_box(members)))
    regions.sort(key=lambda r: (r.boundary.y0, r.boundary.x0, r.boundary.y1, r.boundary.x1))
    for rid, region in enumerate(regions):
        region.id = rid
    return regions


def detect_regions(elements: Sequence[Element], p: ClusterParams) -> list[Region]:
    """Group elements into regions at radius ``p.epsilon``.

    Every element is assigned (no noise); region ids follow the row-major
    order of the region boundaries.
    """
    if not elements:
        return []
    distances = pairwise_distances(elements, p)
    return _cluster_at(elements, distances, p.epsilon)


def _cluster_at(
    elements: Sequence[Element], distances: np.ndarray, epsilon: float
) -> list[Region]:
    uf = _UnionFind(len(elements))
    close = np.argwhere(np.triu(distances <= epsilon, k=1))
    for i, j in close:
        uf.union(int(i), int(j))
    return _regions_from_labels(elements, uf)


def sweep_radius(
    elements: Sequence[Element],
    weights: tuple[float, float, float],
    radii: Sequence[float],
) -> list[tuple[float, list[Region]]]:
    """Cluster once per radius, stopping early at a single region.

    Radii must be ascending; the region count is non-increasing along the
    sweep (single-linkage clusterings only coarsen as the radius grows).
    """
    if not radii:
        raise ValueError("radius grid is empty")
    if list(radii) != sorted(radii):
        raise ValueError("radius grid must be ascending")
    alpha, beta, gamma = weights
    results: list[tuple[float, list[Region]]] = []
    if not elements:
        return [(float(radii[0]), [])]
    params = ClusterParams(alpha=alpha, beta=beta, gamma=gamma, epsilon=radii[0])
    distances = pairwise_distances(elements, params)
    for eps in radii:
        regions = _cluster_at(elements, distances, eps)
        results.append((float(eps), regions))
        if len(regions) <= 1:
            break
    return results


def _region_cells(region: Region) -> frozenset[tuple[int, int]]:
    cells: set[tuple[int, int]] = set()
    for e in region.elements:
        cells.update(e.cells())
    return frozenset(cells)


def select_radius(
    sweep_result: Sequence[tuple[float, list[Region]]],
    gold: Sequence[Rect] | None = None,
    static_default: float = DEFAULT_RADIUS,
) -> float:
    """Pick the best radius from a sweep.

    Without gold annotations this is the static default. With gold, the
    radius maximising the mean per-gold-region IoU wins, smallest radius
    first on ties. IoU is computed on non-empty cells; since elements
    cover exactly the non-empty cells, the gold cell sets are recovered
    by clipping the element cells to each gold rectangle.
    """
    if gold is None:
        return static_default
    if not sweep_result:
        raise ValueError("empty sweep result")
    universe: set[tuple[int, int]] = set()
    for region in sweep_result[0][1]:
        universe.update(_region_cells(region))
    gold_cells = [frozenset((x, y) for (x, y) in universe if r.contains(x, y)) for r in gold]

    best_eps, best_score = None, -1.0
    for eps, regions in sweep_result:
        pred_cells = [_region_cells(r) for r in regions]
        if gold_cells:
            per_gold = []
            for t in gold_cells:
                best = max((metrics.iou(p, t) for p in pred_cells), default=0.0)
                per_gold.append(best)
            score = sum(per_gold) / len(per_gold)
        else:
            score = 1.0
        if score > best_score:
            best_eps, best_score = eps, score
    assert best_eps is not None
    return best_eps
