"""Corpus-level template inference.

Files are ingested one by one into a persistent region index. A file's
regions are compared against every indexed region; a fingerprint match
above the region threshold makes the owners of the matched entry
candidate template partners. Layout similarity is computed for candidate
pairs only, a pair's node-count bound pruning flooding where it cannot
reach the threshold, and templates are the connected components of the
file graph whose edges mark similarity above the layout threshold.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .config import DEFAULT_TAU_F, DEFAULT_TAU_R, FLOOD_MAX_ITER, FLOOD_STOP_EPS
from .fingerprint import Fingerprint, region_similarity
from .layout import LayoutGraph, layout_similarity, node_count_bound
from .metrics import vmeasure

__all__ = [
    "Thresholds",
    "DuplicateFileError",
    "IndexEntry",
    "RegionIndex",
    "SimilarityCache",
    "Template",
    "TemplateSet",
    "SweepPoint",
    "ingest",
    "infer_templates",
    "sweep_tau_f",
]

# layout pairs whose node-count bound is below this can never clear a
# threshold >= 0.7, so flooding is skipped for them
PRUNE_BOUND = 0.7


class DuplicateFileError(ValueError):
    """Raised when a file id is ingested twice."""


@dataclass(frozen=True)
class Thresholds:
    tau_r: float = DEFAULT_TAU_R
    tau_f: float = DEFAULT_TAU_F

    def __post_init__(self) -> None:
        if not (0 <= self.tau_r <= 1 and 0 <= self.tau_f <= 1):
            raise ValueError("thresholds must lie in [0, 1]")


@dataclass
class IndexEntry:
    """One indexed region fingerprint and the files it appears in."""

    fingerprint: Fingerprint
    owners: list[str]


class RegionIndex:
    """Global region index; entries are matched by their first fingerprint.

    A new region joins every entry it matches (entries are never merged)
    or becomes a fresh entry when nothing matches. The store serializes
    one entry per JSON line.
    """

    def __init__(self) -> None:
        self.entries: list[IndexEntry] = []
        self.files: set[str] = set()

    def __len__(self) -> int:
        return len(self.entries)

    def ingest(
        self, file_id: str, fingerprints: Sequence[Fingerprint], tau_r: float
    ) -> set[tuple[str, str]]:
        """Add one file's region fingerprints; return new candidate pairs.

        Regions are compared against the entries present when the file
        arrives, so the first file always contributes one entry per
        region and a file never pairs with itself.
        """
        if file_id in self.files:
            raise DuplicateFileError(f"file {file_id!r} already ingested")
        self.files.add(file_id)
        pairs: set[tuple[str, str]] = set()
        existing = list(self.entries)
        for fp in fingerprints:
            matched = False
            for entry in existing:
                if region_similarity(fp, entry.fingerprint) >= tau_r:
                    matched = True
                    for owner in entry.owners:
                        if owner != file_id:
                            pairs.add(_pair(file_id, owner))
                    if file_id not in entry.owners:
                        entry.owners.append(file_id)
            if not matched:
                self.entries.append(IndexEntry(fingerprint=fp, owners=[file_id]))
        return pairs

    def save(self, path: str | Path) -> None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w") as handle:
            for entry in self.entries:
                record = {
                    "fingerprint": entry.fingerprint.to_list(),
                    "cell_count": entry.fingerprint.cell_count,
                    "owners": entry.owners,
                }
                handle.write(json.dumps(record) + "\n")

    @classmethod
    def load(cls, path: str | Path) -> "RegionIndex":
        index = cls()
        for line in Path(path).read_text().splitlines():
            if not line.strip():
                continue
            record = json.loads(line)
            fp = Fingerprint.from_list(record["fingerprint"], record.get("cell_count", 0))
            index.entries.append(IndexEntry(fingerprint=fp, owners=list(record["owners"])))
            index.files.update(record["owners"])
        return index


def ingest(
    file_id: str,
    layout: LayoutGraph | None,
    index: RegionIndex,
    th: Thresholds,
) -> set[tuple[str, str]]:
    """Ingest a detected file layout into the index; see ``RegionIndex.ingest``."""
    fingerprints = _layout_fingerprints(layout)
    return index.ingest(file_id, fingerprints, th.tau_r)


def _layout_fingerprints(layout: LayoutGraph | None) -> list[Fingerprint]:
    if layout is None:
        return []
    fps = []
    for node in layout.nodes:
        if node.fingerprint is None:
            raise ValueError("regions must be fingerprinted before ingestion")
        fps.append(node.fingerprint)
    return fps


def _pair(a: str, b: str) -> tuple[str, str]:
    return (a, b) if a < b else (b, a)


class SimilarityCache:
    """Pairwise layout similarities keyed by the sorted file-id pair."""

    def __init__(self, values: dict[tuple[str, str], float] | None = None):
        self.values = values or {}

    def get(self, a: str, b: str) -> float | None:
        return self.values.get(_pair(a, b))

    def put(self, a: str, b: str, sim: float) -> None:
        self.values[_pair(a, b)] = sim

    def save(self, path: str | Path) -> None:
        serial = {f"{a}␟{b}": sim for (a, b), sim in self.values.items()}
        Path(path).write_text(json.dumps(serial, sort_keys=True))

    @classmethod
    def load(cls, path: str | Path) -> "SimilarityCache":
        raw = json.loads(Path(path).read_text())
        values = {}
        for key, sim in raw.items():
            a, _, b = key.partition("␟")
            values[(a, b)] = float(sim)
        return cls(values)


@dataclass
class Template:
    id: int
    files: list[str]
    region_matches: list[dict] = field(default_factory=list)


@dataclass
class TemplateSet:
    """A partition of the processed files into layout templates."""

    templates: list[Template]

    def as_partition(self) -> dict[str, int]:
        return {f: t.id for t in self.templates for f in t.files}

    def to_json(self) -> dict:
        return {
            "templates": [
                {"id": t.id, "files": t.files, "region_matches": t.region_matches}
                for t in self.templates
            ]
        }


def _owner_candidates(
    index: RegionIndex, scope: Mapping[str, LayoutGraph | None]
) -> set[tuple[str, str]]:
    """Candidate pairs: files in scope sharing an index entry.

    Equals the union of the pairs emitted incrementally by ingestion (a
    matching region joins the entry, so co-owners are exactly the files
    it was paired with), but is recomputable from a persisted index.
    """
    candidates: set[tuple[str, str]] = set()
    for entry in index.entries:
        present = sorted(o for o in entry.owners if o in scope)
        for i, a in enumerate(present):
            for b in present[i + 1 :]:
                candidates.add((a, b))
    return candidates


class _UnionFind:
    def __init__(self, items: Iterable[str]):
        self.parent = {i: i for i in items}

    def find(self, i: str) -> str:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, a: str, b: str) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def _candidate_similarities(
    layouts: Mapping[str, LayoutGraph | None],
    candidates: set[tuple[str, str]],
    cache: SimilarityCache,
    min_threshold: float,
    eps_stop: float,
    max_iter: int,
) -> dict[tuple[str, str], float]:
    sims: dict[tuple[str, str], float] = {}
    for a, b in sorted(candidates):
        cached = cache.get(a, b)
        if cached is not None:
            sims[(a, b)] = cached
            continue
        g_a, g_b = layouts[a], layouts[b]
        if g_a is None or g_b is None:
            continue
        if min_threshold >= PRUNE_BOUND and node_count_bound(g_a, g_b) < PRUNE_BOUND:
            continue  # provably below every threshold in play
        sim = layout_similarity(g_a, g_b, eps_stop=eps_stop, max_iter=max_iter)
        cache.put(a, b, sim)
        sims[(a, b)] = sim
    return sims


def _components_to_templates(
    files: Sequence[str],
    edges: Iterable[tuple[str, str]],
    index: RegionIndex,
) -> TemplateSet:
    uf = _UnionFind(files)
    for a, b in edges:
        uf.union(a, b)
    groups: dict[str, list[str]] = {}
    for f in files:
        groups.setdefault(uf.find(f), []).append(f)
    members = sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])
    templates = []
    for tid, group in enumerate(members):
        group_set = set(group)
        matches = []
        for k, entry in enumerate(index.entries):
            shared = sorted(group_set.intersection(entry.owners))
            if len(shared) > 1:
                matches.append({"entry": k, "files": shared})
        templates.append(Template(id=tid, files=group, region_matches=matches))
    return TemplateSet(templates=templates)


def infer_templates(
    layouts: Mapping[str, LayoutGraph | None],
    th: Thresholds,
    index: RegionIndex | None = None,
    sim_cache: SimilarityCache | None = None,
    eps_stop: float = FLOOD_STOP_EPS,
    max_iter: int = FLOOD_MAX_ITER,
) -> TemplateSet:
    """Group a corpus of detected file layouts into templates.

    Files that never appear in a candidate pair (or have no regions at
    all) become singleton templates. Template ids are deterministic:
    member lists are sorted and numbered by their smallest file id.
    """
    index = index if index is not None else RegionIndex()
    cache = sim_cache if sim_cache is not None else SimilarityCache()
    for file_id, layout in layouts.items():
        if file_id not in index.files:  # already-indexed files are kept as is
            index.ingest(file_id, _layout_fingerprints(layout), th.tau_r)
    candidates = _owner_candidates(index, layouts)
    sims = _candidate_similarities(
        layouts, candidates, cache, th.tau_f, eps_stop, max_iter
    )
    edges = [pair for pair, sim in sims.items() if sim >= th.tau_f]
    return _components_to_templates(sorted(layouts), edges, index)


@dataclass
class SweepPoint:
    tau_f: float
    templates: TemplateSet
    homogeneity: float | None = None
    completeness: float | None = None
    v_measure: float | None = None


def sweep_tau_f(
    layouts: Mapping[str, LayoutGraph | None],
    taus: Sequence[float],
    tau_r: float = DEFAULT_TAU_R,
    gold: Mapping[str, str] | None = None,
    index: RegionIndex | None = None,
    sim_cache: SimilarityCache | None = None,
    eps_stop: float = FLOOD_STOP_EPS,
    max_iter: int = FLOOD_MAX_ITER,
) -> list[SweepPoint]:
    """Template sets over a grid of layout thresholds, reusing similarities.

    Candidate pairs and their layout similarities are computed once; each
    threshold only re-runs the cheap graph closure. When gold template
    labels are supplied, each point also carries homogeneity,
    completeness, and v-measure.
    """
    if not layouts:
        return []
    index = index if index is not None else RegionIndex()
    cache = sim_cache if sim_cache is not None else SimilarityCache()
    for file_id, layout in layouts.items():
        if file_id not in index.files:
            index.ingest(file_id, _layout_fingerprints(layout), tau_r)
    candidates = _owner_candidates(index, layouts)
    min_tau = min(taus)
    sims = _candidate_similarities(layouts, candidates, cache, min_tau, eps_stop, max_iter)

    files = sorted(layouts)
    points = []
    for tau in taus:
        edges = [pair for pair, sim in sims.items() if sim >= tau]
        template_set = _components_to_templates(files, edges, index)
        point = SweepPoint(tau_f=float(tau), templates=template_set)
        if gold is not None:
            h, c, v = vmeasure(template_set.as_partition(), dict(gold))
            point.homogeneity, point.completeness, point.v_measure = h, c, v
        points.append(point)
    return points
