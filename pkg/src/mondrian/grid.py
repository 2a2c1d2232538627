"""Parsing of delimited text files into grids of syntactically typed cells.

A file is parsed into a rectangular ``TypedGrid``: one cell per field, each
cell classified into one of nine syntactic types by format alone (no
semantic knowledge). The grid can be rendered as an RGB image with one
pixel per cell, which is the representation all downstream detection
stages work on.
"""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass
from enum import Enum

import numpy as np

__all__ = [
    "CellCoord",
    "SyntacticType",
    "TYPE_COLORS",
    "TypedGrid",
    "EmptyFileError",
    "parse_csv",
    "type_of",
    "render",
]

# (x, y): column index, row index; origin at the top-left cell.
CellCoord = tuple[int, int]


class EmptyFileError(ValueError):
    """Raised when an input file contains no rows at all."""


class SyntacticType(str, Enum):
    EMPTY = "empty"
    INTEGER = "integer"
    FLOAT = "float"
    TIME = "time"
    DATE = "date"
    UPPER = "upper"
    LOWER = "lower"
    TITLE = "title"
    GENERIC = "generic"


# One RGB color per type. Sub-types of a fundamental type share a primary
# hue: numbers are blues, datetimes greens, strings reds, empty is white.
TYPE_COLORS: dict[SyntacticType, tuple[int, int, int]] = {
    SyntacticType.EMPTY: (255, 255, 255),
    SyntacticType.INTEGER: (0, 255, 255),
    SyntacticType.FLOAT: (0, 0, 255),
    SyntacticType.TIME: (0, 255, 0),
    SyntacticType.DATE: (0, 128, 0),
    SyntacticType.UPPER: (128, 0, 0),
    SyntacticType.LOWER: (255, 128, 128),
    SyntacticType.TITLE: (255, 75, 75),
    SyntacticType.GENERIC: (255, 0, 0),
}

# Format rules are a replaceable table: deterministic and locale-free.
_INT_RE = re.compile(r"[+-]?(?:\d{1,3}(?:,\d{3})+|\d+)")
_FLOAT_RE = re.compile(
    r"[+-]?(?:(?:\d{1,3}(?:,\d{3})+|\d+)?\.\d+|\d+\.\d*)(?:[eE][+-]?\d+)?"
    r"|[+-]?\d+[eE][+-]?\d+"
)
_TIME_RE = re.compile(r"(\d{1,2}):(\d{2})(?::(\d{2}))?")
_DMY_RE = re.compile(r"(\d{1,2})([./-])(\d{1,2})\2(\d{4}|\d{2})")
_YMD_RE = re.compile(r"(\d{4})([./-])(\d{1,2})\2(\d{1,2})")


def _is_time(text: str) -> bool:
    m = _TIME_RE.fullmatch(text)
    if not m:
        return False
    hh, mm = int(m.group(1)), int(m.group(2))
    ss = int(m.group(3)) if m.group(3) else 0
    return hh < 24 and mm < 60 and ss < 60


def _is_date(text: str) -> bool:
    m = _DMY_RE.fullmatch(text)
    if m:
        a, b = int(m.group(1)), int(m.group(3))
        # accept both day-first and month-first readings
        return 1 <= a <= 31 and 1 <= b <= 31 and (a <= 12 or b <= 12)
    m = _YMD_RE.fullmatch(text)
    if m:
        return 1 <= int(m.group(3)) <= 12 and 1 <= int(m.group(4)) <= 31
    return False


def _is_title(text: str) -> bool:
    tokens = text.split()
    return bool(tokens) and all(t[0].isupper() for t in tokens)


def type_of(raw: str) -> SyntacticType:
    """Classify a cell literal by format. Total and deterministic.

    Classification order: empty, integer, float, time, date, then the
    case-classed strings, with generic string as the fallback. A bare
    4-digit year such as "1990" deliberately classifies as integer; the
    same ambiguous value resolves the same way in every file.
    """
    text = raw.strip()
    if not text:
        return SyntacticType.EMPTY
    if _INT_RE.fullmatch(text):
        return SyntacticType.INTEGER
    if _FLOAT_RE.fullmatch(text):
        return SyntacticType.FLOAT
    if _is_time(text):
        return SyntacticType.TIME
    if _is_date(text):
        return SyntacticType.DATE
    if text.isupper():
        return SyntacticType.UPPER
    if text.islower():
        return SyntacticType.LOWER
    if _is_title(text):
        return SyntacticType.TITLE
    return SyntacticType.GENERIC


@dataclass
class TypedGrid:
    """Rectangular matrix of syntactic cell types plus the raw literals.

    ``cells[y][x]`` is the type of the cell in row y, column x. Every row
    is padded to the length of the longest input row. Raw values are kept
    alongside the types so regions can later be re-emitted as CSV.
    """

    rows: int
    cols: int
    cells: list[list[SyntacticType]]
    values: list[list[str]]
    source: str = ""

    def type_at(self, x: int, y: int) -> SyntacticType:
        return self.cells[y][x]

    def value_at(self, x: int, y: int) -> str:
        return self.values[y][x]

    def is_empty(self, x: int, y: int) -> bool:
        return self.cells[y][x] is SyntacticType.EMPTY

    def non_empty_cells(self) -> set[CellCoord]:
        empty = SyntacticType.EMPTY
        return {
            (x, y)
            for y, row in enumerate(self.cells)
            for x, t in enumerate(row)
            if t is not empty
        }


def parse_csv(
    data: bytes | str,
    delimiter: str = ",",
    quote: str = '"',
    source: str = "",
) -> TypedGrid:
    """Parse delimited text (RFC 4180 quoting) into a ``TypedGrid``.

    Bytes are decoded as UTF-8 with lossy replacement. Rows shorter than
    the longest row are padded with empty cells. Raises ``EmptyFileError``
    for inputs with zero rows and ``ValueError`` if delimiter == quote.
    """
    if delimiter == quote:
        raise ValueError("delimiter and quote character must differ")
    text = data.decode("utf-8", errors="replace") if isinstance(data, bytes) else data
    reader = csv.reader(io.StringIO(text), delimiter=delimiter, quotechar=quote)
    raw_rows = [row for row in reader]
    if not raw_rows:
        raise EmptyFileError(f"no rows in input {source or '<memory>'!r}")
    width = max(len(row) for row in raw_rows)
    values = [row + [""] * (width - len(row)) for row in raw_rows]
    cells = [[type_of(v) for v in row] for row in values]
    return TypedGrid(
        rows=len(values), cols=width, cells=cells, values=values, source=source
    )


def render(grid: TypedGrid) -> np.ndarray:
    """Render the grid as an RGB image, one pixel per cell.

    Returns a (rows, cols, 3) uint8 array; pixel [y, x] holds the color of
    cell (x, y).
    """
    image = np.empty((grid.rows, grid.cols, 3), dtype=np.uint8)
    for y, row in enumerate(grid.cells):
        for x, cell_type in enumerate(row):
            image[y, x] = TYPE_COLORS[cell_type]
    return image
