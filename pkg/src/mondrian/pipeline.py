"""End-to-end glue: parse, segment, cluster, fingerprint, build layouts."""

from __future__ import annotations

from pathlib import Path
from typing import Iterable

from .cluster import ClusterParams, Region, detect_regions
from .config import AppConfig
from .fingerprint import fingerprint
from .grid import TypedGrid, parse_csv
from .layout import LayoutGraph, build_layout
from .segment import segment_file

__all__ = [
    "detect_file_regions",
    "layout_of",
    "analyze_grid",
    "analyze_path",
    "corpus_layouts",
]


def detect_file_regions(grid: TypedGrid, params: ClusterParams) -> list[Region]:
    """Segment the grid, cluster the elements, attach fingerprints."""
    regions = detect_regions(segment_file(grid), params)
    for region in regions:
        region.fingerprint = fingerprint(region, grid)
    return regions


def layout_of(regions: list[Region]) -> LayoutGraph | None:
    """Layout graph of a file; None when the file has no regions."""
    return build_layout(regions) if regions else None


def analyze_grid(grid: TypedGrid, config: AppConfig) -> tuple[list[Region], LayoutGraph | None]:
    regions = detect_file_regions(grid, config.cluster_params())
    return regions, layout_of(regions)


def analyze_path(path: str | Path, config: AppConfig) -> tuple[TypedGrid, list[Region]]:
    path = Path(path)
    grid = parse_csv(
        path.read_bytes(),
        delimiter=config.delimiter,
        quote=config.quote,
        source=path.name,
    )
    return grid, detect_file_regions(grid, config.cluster_params())


def corpus_layouts(
    paths: Iterable[str | Path], config: AppConfig
) -> dict[str, LayoutGraph | None]:
    """Detect regions for each file and return its layout graph by file id.

    File ids are the file names, suffixed with the parent directory when
    names collide.
    """
    layouts: dict[str, LayoutGraph | None] = {}
    for path in paths:
        path = Path(path)
        file_id = path.name
        if file_id in layouts:
            file_id = f"{path.parent.name}/{path.name}"
        grid, regions = analyze_path(path, config)
        layouts[file_id] = layout_of(regions)
    return layouts
