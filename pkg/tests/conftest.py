from __future__ import annotations

import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from mondrian.grid import SyntacticType, TypedGrid


def grid_from_mask(mask: list[str]) -> TypedGrid:
    """Build a grid from a boolean mask: '#' is a filled (integer) cell."""
    rows = len(mask)
    cols = max((len(r) for r in mask), default=0)
    values = [
        ["1" if x < len(row) and row[x] == "#" else "" for x in range(cols)]
        for row in mask
    ]
    cells = [
        [SyntacticType.INTEGER if v else SyntacticType.EMPTY for v in row]
        for row in values
    ]
    return TypedGrid(rows=rows, cols=cols, cells=cells, values=values, source="mask")


def grid_from_rows(rows: list[list[str]]) -> TypedGrid:
    """Build a grid from raw cell literals, padding ragged rows."""
    from mondrian.grid import type_of

    cols = max((len(r) for r in rows), default=0)
    values = [row + [""] * (cols - len(row)) for row in rows]
    cells = [[type_of(v) for v in row] for row in values]
    return TypedGrid(rows=len(rows), cols=cols, cells=cells, values=values, source="rows")


def random_mask(rng: random.Random, rows: int, cols: int, fill: float) -> list[str]:
    return [
        "".join("#" if rng.random() < fill else "." for _ in range(cols))
        for _ in range(rows)
    ]


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240901)
