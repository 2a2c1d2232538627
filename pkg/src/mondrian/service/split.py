"""Splitting a file into one CSV per region.

Each output is the rectangular cut of the original values inside one
region boundary: relative cell positions (including interior empty cells)
are preserved, so every output is itself a rectangular CSV.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from ..geometry import Rect
from ..grid import TypedGrid

__all__ = ["RegionOutOfBoundsError", "SplitFile", "split_grid", "write_split"]


class RegionOutOfBoundsError(ValueError):
    """Raised when a region boundary exceeds the grid."""


@dataclass(frozen=True)
class SplitFile:
    region_id: int
    name: str
    content: str


def split_grid(
    grid: TypedGrid,
    boundaries: Sequence[tuple[int, Rect]],
    stem: str,
    delimiter: str = ",",
    quote: str = '"',
) -> list[SplitFile]:
    """One CSV per (region id, boundary); named ``<stem>_r<id>.csv``.

    Overlapping boundaries are extracted independently, so shared cells
    appear in both outputs.
    """
    outputs = []
    for region_id, box in boundaries:
        if box.x0 < 0 or box.y0 < 0 or box.x1 >= grid.cols or box.y1 >= grid.rows:
            raise RegionOutOfBoundsError(
                f"region {region_id} boundary {box} exceeds grid "
                f"{grid.cols}x{grid.rows}"
            )
        buffer = io.StringIO()
        writer = csv.writer(
            buffer, delimiter=delimiter, quotechar=quote, lineterminator="\n"
        )
        for y in range(box.y0, box.y1 + 1):
            writer.writerow(grid.values[y][box.x0 : box.x1 + 1])
        outputs.append(
            SplitFile(region_id=region_id, name=f"{stem}_r{region_id}.csv", content=buffer.getvalue())
        )
    return outputs


def write_split(outputs: Sequence[SplitFile], outdir: str | Path) -> list[Path]:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    paths = []
    for out in outputs:
        path = outdir / out.name
        path.write_text(out.content)
        paths.append(path)
    return paths
