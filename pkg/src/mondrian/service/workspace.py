"""In-memory workspace backing the CLI and the HTTP service.

Holds the loaded files, their current (detected or user-edited) regions
under optimistic concurrency, the shared configuration, and the region
index used for corpus-level template inference. Region edits are
versioned per file with a monotonically increasing token; a write that
carries a stale token is rejected.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

from ..cluster import ClusterParams, Region
from ..config import AppConfig
from ..fingerprint import fingerprint_box
from ..geometry import Rect
from ..grid import TypedGrid, parse_csv
from ..layout import LayoutGraph, build_layout
from ..pipeline import detect_file_regions
from ..segment import Element
from ..templates import RegionIndex, TemplateSet, Thresholds, infer_templates
from .split import SplitFile, split_grid

__all__ = [
    "RegionState",
    "FileState",
    "UnknownFileError",
    "VersionConflictError",
    "InvalidRegionsError",
    "Workspace",
]


class UnknownFileError(KeyError):
    pass


class VersionConflictError(RuntimeError):
    pass


class InvalidRegionsError(ValueError):
    pass


@dataclass(frozen=True)
class RegionState:
    """A file's current region rectangle, as shown to and edited by users."""

    id: int
    boundary: Rect


@dataclass
class FileState:
    file_id: str
    grid: TypedGrid
    regions: list[RegionState] = field(default_factory=list)
    version: int = 1
    detected: list[Region] | None = None


def _region_states(regions: list[Region]) -> list[RegionState]:
    return [RegionState(id=r.id, boundary=r.boundary) for r in regions]


class Workspace:
    def __init__(self, config: AppConfig | None = None):
        self.config = config or AppConfig()
        self.files: dict[str, FileState] = {}
        self.index = RegionIndex()
        self.templates: TemplateSet | None = None
        self._lock = threading.RLock()

    # -- files ---------------------------------------------------------

    def add_file(
        self,
        name: str,
        content: bytes | str,
        delimiter: str | None = None,
        quote: str | None = None,
    ) -> FileState:
        with self._lock:
            grid = parse_csv(
                content,
                delimiter=delimiter or self.config.delimiter,
                quote=quote or self.config.quote,
                source=name,
            )
            file_id = name
            bump = 2
            while file_id in self.files:
                file_id = f"{name}-{bump}"
                bump += 1
            state = FileState(file_id=file_id, grid=grid)
            self.files[file_id] = state
            return state

    def get(self, file_id: str) -> FileState:
        try:
            return self.files[file_id]
        except KeyError:
            raise UnknownFileError(file_id) from None

    # -- regions -------------------------------------------------------

    def detect(self, file_id: str, params: ClusterParams | None = None) -> FileState:
        with self._lock:
            state = self.get(file_id)
            regions = detect_file_regions(state.grid, params or self.config.cluster_params())
            state.detected = regions
            state.regions = _region_states(regions)
            state.version += 1
            return state

    def _validate(self, grid: TypedGrid, rects: list[Rect]) -> None:
        for rect in rects:
            if rect.x0 < 0 or rect.y0 < 0 or rect.x1 >= grid.cols or rect.y1 >= grid.rows:
                raise InvalidRegionsError(
                    f"region {rect} out of grid bounds {grid.cols}x{grid.rows}"
                )

    def replace_regions(self, file_id: str, rects: list[Rect], version: int) -> FileState:
        """Replace a file's regions under optimistic concurrency.

        A request that matches the current regions is a no-op whatever its
        token; otherwise a stale token conflicts. Region ids are
        renumbered to the list order.
        """
        with self._lock:
            state = self.get(file_id)
            self._validate(state.grid, rects)
            if rects == [r.boundary for r in state.regions]:
                return state
            if version != state.version:
                raise VersionConflictError(
                    f"version {version} is stale (current {state.version})"
                )
            state.regions = [RegionState(id=i, boundary=r) for i, r in enumerate(rects)]
            state.version += 1
            return state

    # -- downstream ----------------------------------------------------

    def split(self, file_id: str) -> list[SplitFile]:
        state = self.get(file_id)
        stem = state.file_id.rsplit(".", 1)[0]
        boundaries = [(r.id, r.boundary) for r in state.regions]
        return split_grid(
            state.grid,
            boundaries,
            stem,
            delimiter=self.config.delimiter,
            quote=self.config.quote,
        )

    def _layout(self, state: FileState) -> LayoutGraph | None:
        if not state.regions:
            return None
        regions = []
        for rs in state.regions:
            box = rs.boundary
            region = Region(
                id=rs.id,
                elements=[Element(box.x0, box.y0, box.x1, box.y1, -1)],
                boundary=box,
                fingerprint=fingerprint_box(box, state.grid),
            )
            regions.append(region)
        return build_layout(regions)

    def infer_templates(
        self, tau_r: float | None = None, tau_f: float | None = None
    ) -> TemplateSet:
        """Template inference over every loaded file's current regions."""
        with self._lock:
            thresholds = Thresholds(
                tau_r=tau_r if tau_r is not None else self.config.tau_r,
                tau_f=tau_f if tau_f is not None else self.config.tau_f,
            )
            for state in self.files.values():
                if not state.regions:
                    self.detect(state.file_id)
            layouts = {fid: self._layout(state) for fid, state in sorted(self.files.items())}
            self.index = RegionIndex()
            self.templates = infer_templates(
                layouts,
                thresholds,
                index=self.index,
                eps_stop=self.config.flood_stop_eps,
                max_iter=self.config.flood_max_iter,
            )
            return self.templates
