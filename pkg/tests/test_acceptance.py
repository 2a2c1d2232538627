"""Acceptance suite: one test per shipped-behavior criterion.

Each test prints a single pass line (run with ``pytest -s`` to see them);
a failed assertion marks the criterion red. Tolerances are pinned here
and nowhere else.
"""

from __future__ import annotations

import itertools
import random
import time

import numpy as np
import pytest
from conftest import grid_from_mask, random_mask
from oracles import (
    brute_vmeasure,
    check_exact_cover,
    clusters_as_cellsets,
    components_as_index_sets,
    rect_cells,
    threshold_components,
)
from synthcorpus import generate_corpus

from mondrian.cluster import ClusterParams, Region, detect_regions, element_distance
from mondrian.config import AppConfig
from mondrian.fingerprint import TOTAL_BINS, Fingerprint
from mondrian.geometry import Rect
from mondrian.grid import parse_csv
from mondrian.layout import build_layout, layout_similarity, node_count_bound
from mondrian.metrics import iou, nonempty_cells_in, vmeasure
from mondrian.pipeline import analyze_grid
from mondrian.segment import Element, segment_file
from mondrian.templates import Thresholds, infer_templates, sweep_tau_f


def report(number: int, name: str) -> None:
    print(f"[acceptance] criterion {number} ({name}): PASS")


def test_criterion_1_segmentation_oracle():
    rng = random.Random(101)
    grids = []
    for _ in range(1000):
        rows = rng.randint(1, 40)
        cols = rng.randint(1, 40)
        grids.append(grid_from_mask(random_mask(rng, rows, cols, rng.uniform(0.1, 0.9))))

    started = time.perf_counter()
    results = [segment_file(g) for g in grids]
    elapsed = time.perf_counter() - started

    for grid, elements in zip(grids, results):
        assert check_exact_cover(elements, grid.non_empty_cells())
    assert elapsed < 5.0, f"segmentation took {elapsed:.2f}s on 1000 grids"
    report(1, "segmentation oracle, <5s for 1000 grids")


def _random_disjoint_elements(rng: random.Random, n: int) -> list[Element]:
    elements: list[Element] = []
    attempts = 0
    while len(elements) < n and attempts < n * 80:
        attempts += 1
        x0, y0 = rng.randint(0, 70), rng.randint(0, 70)
        cand = Element(x0, y0, x0 + rng.randint(0, 6), y0 + rng.randint(0, 6), 0)
        if all(
            max(cand.x0, e.x0) > min(cand.x1, e.x1)
            or max(cand.y0, e.y0) > min(cand.y1, e.y1)
            for e in elements
        ):
            elements.append(cand)
    return elements


def test_criterion_2_clustering_oracle():
    rng = random.Random(202)
    mismatches = 0
    for _ in range(500):
        elements = _random_disjoint_elements(rng, rng.randint(0, 50))
        for _ in range(5):
            params = ClusterParams(
                alpha=rng.uniform(0, 2),
                beta=rng.uniform(0, 2),
                gamma=rng.uniform(0, 2),
                epsilon=rng.uniform(0.1, 10),
            )
            regions = detect_regions(elements, params)
            oracle = components_as_index_sets(elements, threshold_components(elements, params))
            if clusters_as_cellsets(regions) != oracle:
                mismatches += 1
    assert mismatches == 0
    report(2, "clustering equals threshold-graph components, 2500 runs")


def _rectangle_scatter(rng: random.Random) -> list[str]:
    """Mask of solid rectangles separated by at least two empty lines."""
    rows = cols = 40
    mask = [["."] * cols for _ in range(rows)]
    placed: list[Rect] = []
    for _ in range(rng.randint(3, 8)):
        for _ in range(60):
            w, h = rng.randint(1, 6), rng.randint(1, 6)
            x0 = rng.randint(0, cols - w)
            y0 = rng.randint(0, rows - h)
            cand = Rect(x0, y0, x0 + w - 1, y0 + h - 1)
            if all(
                max(cand.x0, p.x0) - min(cand.x1, p.x1) > 2
                or max(cand.y0, p.y0) - min(cand.y1, p.y1) > 2
                for p in placed
            ):
                placed.append(cand)
                for x, y in rect_cells(cand):
                    mask[y][x] = "#"
                break
    return ["".join(r) for r in mask]


def test_criterion_3_degeneration_to_components():
    rng = random.Random(303)
    params = ClusterParams(alpha=1, beta=0.5, gamma=1, epsilon=0.5)
    for _ in range(20):
        grid = grid_from_mask(_rectangle_scatter(rng))
        elements = segment_file(grid)
        assert len(elements) >= 2
        # fixture precondition: all non-adjacent element distances exceed 1
        for a, b in itertools.combinations(elements, 2):
            assert element_distance(a, b, params) > 1
        regions = detect_regions(elements, params)
        by_region = clusters_as_cellsets(regions)
        by_component: dict[int, set] = {}
        for e in elements:
            by_component.setdefault(e.component_id, set()).add((e.x0, e.y0, e.x1, e.y1))
        assert by_region == {frozenset(v) for v in by_component.values()}
    report(3, "radius 0.5 degenerates to connected components, 20 fixtures")


def _random_fp(rng: random.Random) -> Fingerprint:
    bins = np.zeros(TOTAL_BINS)
    for _ in range(rng.randint(2, 6)):
        bins[rng.randrange(TOTAL_BINS)] += rng.uniform(0.2, 2.0)
    return Fingerprint(bins=bins / bins.sum(), cell_count=1)


def _random_layout(rng: random.Random, n_nodes: int, distinct: bool = False):
    regions = []
    y = 0
    for k in range(n_nodes):
        h, w = rng.randint(0, 6), rng.randint(0, 9)
        x0 = rng.randint(0, 4)
        fp = _random_fp(rng)
        if distinct:  # a dedicated marker bin keeps fingerprints apart
            bins = fp.bins * 0.5
            bins[k] += 0.5
            fp = Fingerprint(bins=bins, cell_count=fp.cell_count)
        regions.append(
            Region(id=k, elements=[], boundary=Rect(x0, y, x0 + w, y + h), fingerprint=fp)
        )
        y += h + rng.randint(2, 5)
    return build_layout(regions)


def test_criterion_4_flooding_bounds():
    rng = random.Random(404)
    for _ in range(200):
        u = rng.randint(1, 6)
        v = rng.choice([k for k in range(1, 7) if k != u])
        g_a, g_b = _random_layout(rng, u), _random_layout(rng, v)
        sim = layout_similarity(g_a, g_b)
        assert sim <= node_count_bound(g_a, g_b) + 1e-9

    for _ in range(50):
        g = _random_layout(rng, rng.randint(1, 6), distinct=True)
        assert layout_similarity(g, g) == pytest.approx(1.0, abs=1e-9)
    report(4, "node-count bound and exact self-similarity")


def test_criterion_5_template_end_to_end():
    started = time.perf_counter()
    corpus = generate_corpus(n_templates=5, files_per_template=6, seed=12)
    config = AppConfig()
    layouts, gold = {}, {}
    for f in corpus:
        _, layout = analyze_grid(parse_csv(f.text.encode(), source=f.file_id), config)
        layouts[f.file_id] = layout
        gold[f.file_id] = f"t{f.template_id}"

    taus = [round(0.7 + 0.01 * k, 2) for k in range(31)]
    points = sweep_tau_f(layouts, taus, gold=gold)
    perfect = [p for p in points if p.v_measure == pytest.approx(1.0, abs=1e-12)]
    assert perfect, "no threshold in [0.7, 1.0] recovers the generated templates"
    best_tau = perfect[0].tau_f

    reference = [t.files for t in infer_templates(layouts, Thresholds(tau_f=best_tau)).templates]
    rng = random.Random(5)
    ids = list(layouts)
    for _ in range(5):
        rng.shuffle(ids)
        shuffled = {fid: layouts[fid] for fid in ids}
        result = infer_templates(shuffled, Thresholds(tau_f=best_tau))
        assert [t.files for t in result.templates] == reference

    elapsed = time.perf_counter() - started
    assert elapsed < 60.0, f"template end-to-end took {elapsed:.1f}s"
    report(5, f"30-file corpus: v-measure 1.0 at tau={best_tau}, order independent, {elapsed:.1f}s")


def test_criterion_6_metric_oracles():
    rng = random.Random(606)
    for _ in range(200):
        n = rng.randint(1, 20)
        items = [f"f{i}" for i in range(n)]
        predicted = {i: rng.randint(0, 5) for i in items}
        gold = {i: rng.randint(0, 4) for i in items}
        got = vmeasure(predicted, gold)
        want = brute_vmeasure(predicted, gold)
        for g, w in zip(got, want):
            assert abs(g - w) <= 1e-12

    for _ in range(200):
        grid = grid_from_mask(random_mask(rng, 10, 10, 0.5))
        universe = grid.non_empty_cells()
        a = Rect(rng.randint(0, 5), rng.randint(0, 5), rng.randint(5, 9), rng.randint(5, 9))
        b = Rect(rng.randint(0, 5), rng.randint(0, 5), rng.randint(5, 9), rng.randint(5, 9))
        pa, pb = nonempty_cells_in(a, grid), nonempty_cells_in(b, grid)
        brute_a, brute_b = rect_cells(a) & universe, rect_cells(b) & universe
        if not brute_a and not brute_b:
            expected = 1.0
        else:
            expected = len(brute_a & brute_b) / len(brute_a | brute_b)
        assert iou(pa, pb) == expected
    report(6, "v-measure to 1e-12 and IoU exact against brute force")


def test_criterion_7_shipped_defaults():
    config = AppConfig()
    assert config.tau_r == 0.75
    assert config.flood_stop_eps == 0.1
    assert config.flood_max_iter == 10
    assert config.radius == 1.5
    assert (config.alpha, config.beta, config.gamma) == (1.0, 0.5, 1.0)
    params = ClusterParams()
    assert (params.alpha, params.beta, params.gamma, params.epsilon) == (1.0, 0.5, 1.0, 1.5)
    assert params.min_points == 1
    assert Thresholds().tau_r == 0.75
    report(7, "defaults snapshot: tau_r 0.75, flood 0.1/10, radius 1.5, weights (1, 0.5, 1)")


def test_criterion_8_throughput():
    rng = random.Random(808)
    rows = [["" for _ in range(50)] for _ in range(200)]
    placed: list[Rect] = []
    while len(placed) < 20:
        w, h = rng.randint(2, 8), rng.randint(2, 12)
        x0, y0 = rng.randint(0, 50 - w), rng.randint(0, 200 - h)
        cand = Rect(x0, y0, x0 + w - 1, y0 + h - 1)
        if all(
            max(cand.x0, p.x0) - min(cand.x1, p.x1) > 2
            or max(cand.y0, p.y0) - min(cand.y1, p.y1) > 2
            for p in placed
        ):
            placed.append(cand)
            for x, y in rect_cells(cand):
                rows[y][x] = rng.choice(["14", "2.5", "word", "WORD", "Firm"])
    text = "\n".join(",".join(r) for r in rows)

    started = time.perf_counter()
    grid = parse_csv(text.encode())
    regions, _ = analyze_grid(grid, AppConfig())
    elapsed = time.perf_counter() - started

    assert len(segment_file(grid)) == 20
    assert regions
    assert elapsed < 2.0, f"detect took {elapsed:.2f}s"
    report(8, f"200x50 grid with 20 elements in {elapsed * 1000:.0f}ms")
