"""Segmentation of a typed grid into rectangular elements.

Non-empty cells are first grouped into 4-connected components. Each
component (a rectilinear polyomino, possibly with holes) is then cut into
rectangles by extending the vertical edges at concave vertices through
the interior: per column, maximal vertical runs of cells are computed and
runs in adjacent columns with identical row extent are merged. Over-split
elements are acceptable; the clustering stage re-merges them.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

from .geometry import Rect
from .grid import CellCoord, SyntacticType, TypedGrid

__all__ = ["Component", "Element", "connected_components", "partition", "segment_file"]


@dataclass(frozen=True)
class Component:
    """A 4-connected set of non-empty cells."""

    id: int
    cells: frozenset[CellCoord]


@dataclass(frozen=True)
class Element(Rect):
    """A rectangle of non-empty cells carved out of one component."""

    component_id: int = -1


def connected_components(grid: TypedGrid) -> list[Component]:
    """4-connected components of the non-empty cells.

    Ids follow the row-major order of each component's first cell, so two
    runs over the same grid label components identically.
    """
    empty = SyntacticType.EMPTY
    cols, rows = grid.cols, grid.rows
    seen = [[False] * cols for _ in range(rows)]
    components: list[Component] = []
    for y in range(rows):
        row = grid.cells[y]
        for x in range(cols):
            if seen[y][x] or row[x] is empty:
                continue
            # iterative DFS flood fill
            stack = [(x, y)]
            seen[y][x] = True
            cells = []
            while stack:
                cx, cy = stack.pop()
                cells.append((cx, cy))
                if cx > 0 and not seen[cy][cx - 1] and grid.cells[cy][cx - 1] is not empty:
                    seen[cy][cx - 1] = True
                    stack.append((cx - 1, cy))
                if cx + 1 < cols and not seen[cy][cx + 1] and grid.cells[cy][cx + 1] is not empty:
                    seen[cy][cx + 1] = True
                    stack.append((cx + 1, cy))
                if cy > 0 and not seen[cy - 1][cx] and grid.cells[cy - 1][cx] is not empty:
                    seen[cy - 1][cx] = True
                    stack.append((cx, cy - 1))
                if cy + 1 < rows and not seen[cy + 1][cx] and grid.cells[cy + 1][cx] is not empty:
                    seen[cy + 1][cx] = True
                    stack.append((cx, cy + 1))
            components.append(Component(id=len(components), cells=frozenset(cells)))
    return components


def _column_runs(ys: list[int]) -> list[tuple[int, int]]:
    """Maximal contiguous runs in a sorted list of row indices."""
    runs = []
    start = prev = ys[0]
    for y in ys[1:]:
        if y != prev + 1:
            runs.append((start, prev))
            start = y
        prev = y
    runs.append((start, prev))
    return runs


def partition(component: Component) -> list[Element]:
    """Cut a component into disjoint rectangles covering it exactly.

    Sweeps columns left to right, keeping rectangles open while adjacent
    columns repeat the same vertical run; a run that starts, ends, or
    shifts closes the rectangle. Holes simply change the runs of the
    columns they touch. A component that is already a full rectangle
    yields a single element.
    """
    by_col: dict[int, list[int]] = defaultdict(list)
    for cx, cy in component.cells:
        by_col[cx].append(cy)
    runs = {x: _column_runs(sorted(ys)) for x, ys in by_col.items()}

    elements: list[Element] = []
    open_rects: dict[tuple[int, int], int] = {}  # (y0, y1) -> first column
    prev_x: int | None = None
    for x in sorted(runs):
        if prev_x is not None and x != prev_x + 1:
            for (y0, y1), x_start in open_rects.items():
                elements.append(Element(x_start, y0, prev_x, y1, component.id))
            open_rects = {}
        current = set(runs[x])
        for interval in [iv for iv in open_rects if iv not in current]:
            x_start = open_rects.pop(interval)
            elements.append(Element(x_start, interval[0], prev_x, interval[1], component.id))
        for interval in current:
            if interval not in open_rects:
                open_rects[interval] = x
        prev_x = x
    for (y0, y1), x_start in open_rects.items():
        elements.append(Element(x_start, y0, prev_x, y1, component.id))
    elements.sort(key=lambda e: (e.y0, e.x0, e.y1, e.x1))
    return elements


def segment_file(grid: TypedGrid) -> list[Element]:
    """All elements of a grid: every component partitioned, ids preserved."""
    elements: list[Element] = []
    for component in connected_components(grid):
        elements.extend(partition(component))
    return elements


def elements_as_json(elements: list[Element]) -> list[dict]:
    """Debug dump: plain dicts with bounds and owning component."""
    return [
        {"x0": e.x0, "y0": e.y0, "x1": e.x1, "y1": e.y1, "component_id": e.component_id}
        for e in elements
    ]
