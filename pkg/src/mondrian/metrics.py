"""Evaluation harness: region scores, detection curves, clustering quality.

Region detection is scored on the non-empty cell sets of predicted vs
gold regions (Jaccard overlap) and on corner-coordinate error. Template
partitions are scored with homogeneity / completeness / v-measure, and
the per-file correction effort with a rectangle edit distance.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import AbstractSet, Hashable, Mapping, Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from .geometry import Rect
from .grid import CellCoord, SyntacticType, TypedGrid

__all__ = [
    "Annotation",
    "ClassificationScores",
    "RegionScore",
    "iou",
    "nonempty_cells_in",
    "eob",
    "region_score",
    "detection_curve",
    "multiregion_classification",
    "vmeasure",
    "edit_distance",
    "region_density",
    "region_type_entropy",
    "load_annotations",
]


def iou(p: AbstractSet[CellCoord], t: AbstractSet[CellCoord]) -> float:
    """Jaccard overlap of two cell sets; 1.0 when both are empty."""
    if not p and not t:
        return 1.0
    inter = len(p & t)
    return inter / (len(p) + len(t) - inter)


def nonempty_cells_in(rect: Rect, grid: TypedGrid) -> frozenset[CellCoord]:
    """Non-empty cells of the grid inside a rectangle (clipped to bounds)."""
    empty = SyntacticType.EMPTY
    cells = []
    for y in range(max(rect.y0, 0), min(rect.y1, grid.rows - 1) + 1):
        row = grid.cells[y]
        for x in range(max(rect.x0, 0), min(rect.x1, grid.cols - 1) + 1):
            if row[x] is not empty:
                cells.append((x, y))
    return frozenset(cells)


def eob(p: Rect, t: Rect) -> int:
    """Error of boundary: worst absolute corner-coordinate difference."""
    return max(
        abs(p.x0 - t.x0), abs(p.y0 - t.y0), abs(p.x1 - t.x1), abs(p.y1 - t.y1)
    )


@dataclass(frozen=True)
class RegionScore:
    """Best scores a gold region obtained over all predictions."""

    iou: float
    eob: int


def region_score(
    predicted: Sequence[Rect], gold: Sequence[Rect], grid: TypedGrid
) -> list[RegionScore]:
    """Per gold region: max IoU and min EoB over the predicted regions.

    With no predictions at all, IoU is 0 and EoB is the larger of the file
    height and width, simulating a completely out-of-boundary detection.
    """
    if not predicted:
        miss = max(grid.rows, grid.cols)
        return [RegionScore(0.0, miss) for _ in gold]
    pred_cells = [nonempty_cells_in(p, grid) for p in predicted]
    scores = []
    for t in gold:
        t_cells = nonempty_cells_in(t, grid)
        best_iou = max(iou(pc, t_cells) for pc in pred_cells)
        best_eob = min(eob(p, t) for p in predicted)
        scores.append(RegionScore(best_iou, best_eob))
    return scores


def detection_curve(scores: Sequence[float], thresholds: Sequence[float]) -> list[float]:
    """Fraction of scores >= t for each threshold t (ascending)."""
    if list(thresholds) != sorted(thresholds):
        raise ValueError("thresholds must be ascending")
    if not scores:
        return [0.0 for _ in thresholds]
    n = len(scores)
    return [sum(1 for s in scores if s >= t) / n for t in thresholds]


@dataclass(frozen=True)
class ClassificationScores:
    accuracy: float
    precision: float
    recall: float
    precision_defined: bool = True


def multiregion_classification(
    predicted_counts: Mapping[Hashable, int], gold_counts: Mapping[Hashable, int]
) -> ClassificationScores:
    """Binary scores for "does this file contain multiple regions?".

    Positive class is region count > 1. A precision with no positive
    predictions is undefined and reported as 0 with the flag cleared.
    """
    if set(predicted_counts) != set(gold_counts):
        raise ValueError("predicted and gold cover different file sets")
    tp = fp = fn = tn = 0
    for f, pred in predicted_counts.items():
        p, g = pred > 1, gold_counts[f] > 1
        if p and g:
            tp += 1
        elif p:
            fp += 1
        elif g:
            fn += 1
        else:
            tn += 1
    total = tp + fp + fn + tn
    accuracy = (tp + tn) / total if total else 0.0
    precision_defined = (tp + fp) > 0
    precision = tp / (tp + fp) if precision_defined else 0.0
    recall = tp / (tp + fn) if (tp + fn) else 0.0
    return ClassificationScores(accuracy, precision, recall, precision_defined)


def _entropy(counts: Counter) -> float:
    n = sum(counts.values())
    return -sum((c / n) * math.log(c / n) for c in counts.values() if c)


def vmeasure(
    predicted: Mapping[Hashable, Hashable], gold: Mapping[Hashable, Hashable]
) -> tuple[float, float, float]:
    """Homogeneity, completeness, and their harmonic mean (v-measure).

    Conditional-entropy definitions: homogeneity is 1 - H(gold|pred)/H(gold),
    completeness is 1 - H(pred|gold)/H(pred), each defined as 1 when the
    reference entropy is zero.
    """
    if set(predicted) != set(gold):
        raise ValueError("partitions cover different item sets")
    n = len(predicted)
    if n == 0:
        return (1.0, 1.0, 1.0)
    joint = Counter((gold[i], predicted[i]) for i in predicted)
    gold_counts = Counter(gold.values())
    pred_counts = Counter(predicted.values())

    h_gold = _entropy(gold_counts)
    h_pred = _entropy(pred_counts)
    h_gold_given_pred = -sum(
        (c / n) * math.log(c / pred_counts[k]) for (_, k), c in joint.items()
    )
    h_pred_given_gold = -sum(
        (c / n) * math.log(c / gold_counts[g]) for (g, _), c in joint.items()
    )
    homogeneity = 1.0 if h_gold == 0 else 1.0 - h_gold_given_pred / h_gold
    completeness = 1.0 if h_pred == 0 else 1.0 - h_pred_given_gold / h_pred
    if homogeneity + completeness == 0:
        v = 0.0
    else:
        v = 2 * homogeneity * completeness / (homogeneity + completeness)
    return (homogeneity, completeness, v)


def _box_iou(a: Rect, b: Rect) -> float:
    ix = min(a.x1, b.x1) - max(a.x0, b.x0) + 1
    iy = min(a.y1, b.y1) - max(a.y0, b.y0) + 1
    if ix <= 0 or iy <= 0:
        return 0.0
    inter = ix * iy
    return inter / (a.area + b.area - inter)


def edit_distance(predicted: Sequence[Rect], gold: Sequence[Rect]) -> int:
    """Number of edits turning the predicted rectangles into the gold ones.

    Predictions are matched one-to-one to gold regions by maximising total
    box IoU. A matched pair costs 0 if identical and 1 (resize) otherwise;
    an unmatched gold region costs 2 (add, then resize into place); an
    unmatched prediction costs 1 (delete).
    """
    if not predicted:
        return 2 * len(gold)
    if not gold:
        return len(predicted)
    weights = np.array([[_box_iou(p, t) for t in gold] for p in predicted])
    rows, cols = linear_sum_assignment(weights, maximize=True)
    cost = 0
    for i, j in zip(rows, cols):
        if predicted[i] != gold[j]:
            cost += 1
    cost += 2 * (len(gold) - len(rows))
    cost += len(predicted) - len(rows)
    return cost


def region_density(rect: Rect, grid: TypedGrid) -> float:
    """Share of non-empty cells within the rectangle."""
    boxed = min(rect.x1, grid.cols - 1) - max(rect.x0, 0) + 1
    boxed *= min(rect.y1, grid.rows - 1) - max(rect.y0, 0) + 1
    if boxed <= 0:
        return 0.0
    return len(nonempty_cells_in(rect, grid)) / boxed


def region_type_entropy(rect: Rect, grid: TypedGrid) -> float:
    """Entropy of the syntactic-type distribution within the rectangle."""
    counts: Counter = Counter()
    for y in range(max(rect.y0, 0), min(rect.y1, grid.rows - 1) + 1):
        for x in range(max(rect.x0, 0), min(rect.x1, grid.cols - 1) + 1):
            counts[grid.cells[y][x]] += 1
    return _entropy(counts) if counts else 0.0


@dataclass
class Annotation:
    """Gold regions (and optional template label) for one file."""

    file: str
    sheet: str = ""
    regions: list[tuple[Rect, str | None]] = field(default_factory=list)
    template: str | None = None

    @property
    def rects(self) -> list[Rect]:
        return [r for r, _ in self.regions]


def load_annotations(path: str | Path) -> list[Annotation]:
    """Read annotations from JSON: a list of
    {file, sheet?, regions: [{x0,y0,x1,y1,label?}], template?} objects."""
    raw = json.loads(Path(path).read_text())
    annotations = []
    for entry in raw:
        regions = [
            (Rect(r["x0"], r["y0"], r["x1"], r["y1"]), r.get("label"))
            for r in entry.get("regions", [])
        ]
        annotations.append(
            Annotation(
                file=entry["file"],
                sheet=entry.get("sheet", ""),
                regions=regions,
                template=entry.get("template"),
            )
        )
    return annotations
