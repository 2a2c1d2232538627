from __future__ import annotations

import random

import pytest
from oracles import (
    clusters_as_cellsets,
    components_as_index_sets,
    threshold_components,
)

from mondrian.cluster import (
    ClusterParams,
    detect_regions,
    element_distance,
    pairwise_distances,
    select_radius,
    sweep_radius,
)
from mondrian.geometry import Rect
from mondrian.segment import Element


def el(x0, y0, x1, y1, cid=0) -> Element:
    return Element(x0, y0, x1, y1, cid)


def random_elements(rng: random.Random, n: int, span: int = 60) -> list[Element]:
    """Non-overlapping random rectangles, built greedily."""
    elements: list[Element] = []
    attempts = 0
    while len(elements) < n and attempts < n * 60:
        attempts += 1
        x0, y0 = rng.randint(0, span), rng.randint(0, span)
        cand = el(x0, y0, x0 + rng.randint(0, 5), y0 + rng.randint(0, 5))
        if all(
            max(cand.x0, e.x0) > min(cand.x1, e.x1) or max(cand.y0, e.y0) > min(cand.y1, e.y1)
            for e in elements
        ):
            elements.append(cand)
    return elements


class TestParams:
    def test_defaults(self):
        p = ClusterParams()
        assert (p.alpha, p.beta, p.gamma, p.epsilon, p.min_points) == (1.0, 0.5, 1.0, 1.5, 1)

    def test_validation(self):
        with pytest.raises(ValueError):
            ClusterParams(alpha=-1)
        with pytest.raises(ValueError):
            ClusterParams(epsilon=0)
        with pytest.raises(ValueError):
            ClusterParams(min_points=2)


class TestElementDistance:
    def test_adjacent_equal_aligned_is_zero(self):
        p = ClusterParams(alpha=1, beta=0.5, gamma=1)
        assert element_distance(el(0, 0, 2, 2), el(3, 0, 5, 2), p) == 0

    def test_stacked_with_gap(self):
        p = ClusterParams(alpha=1, beta=0.5, gamma=1)
        assert element_distance(el(0, 0, 2, 2), el(0, 4, 2, 6), p) == pytest.approx(1.0)

    def test_self_distance_zero(self):
        assert element_distance(el(1, 1, 4, 4), el(1, 1, 4, 4), ClusterParams()) == 0

    def test_symmetry_random(self, rng):
        p = ClusterParams(alpha=0.7, beta=1.3, gamma=0.4)
        for _ in range(100):
            a, b = random_elements(rng, 2)
            assert element_distance(a, b, p) == pytest.approx(element_distance(b, a, p))

    def test_matrix_matches_scalar(self, rng):
        p = ClusterParams(alpha=1.1, beta=0.6, gamma=0.9)
        elements = random_elements(rng, 12)
        matrix = pairwise_distances(elements, p)
        for i, a in enumerate(elements):
            for j, b in enumerate(elements):
                assert matrix[i, j] == pytest.approx(element_distance(a, b, p), abs=1e-9)

    def test_overlapping_elements_rejected(self):
        from mondrian.geometry import IllegalOverlapError

        with pytest.raises(IllegalOverlapError):
            pairwise_distances([el(0, 0, 3, 3), el(2, 2, 5, 5)], ClusterParams())


class TestDetectRegions:
    def test_empty_input(self):
        assert detect_regions([], ClusterParams()) == []

    def test_pair_below_radius(self):
        regions = detect_regions([el(0, 0, 2, 2), el(3, 0, 5, 2)], ClusterParams(epsilon=1.5))
        assert len(regions) == 1

    def test_transitive_chain(self):
        # distances: d(e1,e2) = d(e2,e3) = 1 (stacked, one blank row) while
        # d(e1,e3) = 5 > eps; the chain still makes one region at eps 1.5
        chain = [el(0, 0, 2, 2), el(0, 4, 2, 6), el(0, 8, 2, 10)]
        p = ClusterParams(alpha=1, beta=0.5, gamma=1, epsilon=1.5)
        assert element_distance(chain[0], chain[1], p) == 1
        assert element_distance(chain[1], chain[2], p) == 1
        assert element_distance(chain[0], chain[2], p) == 5
        regions = detect_regions(chain, p)
        assert len(regions) == 1
        oracle = components_as_index_sets(chain, threshold_components(chain, p))
        assert clusters_as_cellsets(regions) == oracle

    def test_oracle_equivalence_random(self, rng):
        for _ in range(60):
            elements = random_elements(rng, rng.randint(0, 25))
            p = ClusterParams(
                alpha=rng.uniform(0, 2),
                beta=rng.uniform(0, 2),
                gamma=rng.uniform(0, 2),
                epsilon=rng.uniform(0.2, 8),
            )
            regions = detect_regions(elements, p)
            oracle = components_as_index_sets(elements, threshold_components(elements, p))
            assert clusters_as_cellsets(regions) == oracle

    def test_boundary_is_bounding_box(self, rng):
        elements = random_elements(rng, 15)
        for region in detect_regions(elements, ClusterParams(epsilon=3)):
            assert region.boundary == Rect(
                min(e.x0 for e in region.elements),
                min(e.y0 for e in region.elements),
                max(e.x1 for e in region.elements),
                max(e.y1 for e in region.elements),
            )

    def test_permutation_invariance(self, rng):
        elements = random_elements(rng, 18)
        p = ClusterParams(epsilon=2.5)
        baseline = clusters_as_cellsets(detect_regions(elements, p))
        for _ in range(5):
            shuffled = elements[:]
            rng.shuffle(shuffled)
            assert clusters_as_cellsets(detect_regions(shuffled, p)) == baseline

    def test_region_ids_row_major(self, rng):
        elements = random_elements(rng, 15)
        regions = detect_regions(elements, ClusterParams(epsilon=1.0))
        keys = [(r.boundary.y0, r.boundary.x0) for r in regions]
        assert keys == sorted(keys)
        assert [r.id for r in regions] == list(range(len(regions)))

    def test_every_element_assigned(self, rng):
        elements = random_elements(rng, 20)
        regions = detect_regions(elements, ClusterParams(epsilon=0.5))
        assigned = [e for r in regions for e in r.elements]
        assert sorted(assigned, key=lambda e: (e.y0, e.x0)) == sorted(
            elements, key=lambda e: (e.y0, e.x0)
        )

    def test_monotone_coarsening(self, rng):
        elements = random_elements(rng, 20)
        p1 = ClusterParams(epsilon=1.0)
        p2 = ClusterParams(epsilon=4.0)
        fine = detect_regions(elements, p1)
        coarse = detect_regions(elements, p2)
        fine_sets = clusters_as_cellsets(fine)
        coarse_sets = clusters_as_cellsets(coarse)
        for f in fine_sets:
            assert any(f <= c for c in coarse_sets)


class TestSweepRadius:
    def test_single_element_stops_immediately(self):
        result = sweep_radius([el(0, 0, 1, 1)], (1, 0.5, 1), [0.5, 1.0, 2.0])
        assert len(result) == 1
        assert len(result[0][1]) == 1

    def test_threshold_pair(self):
        # stacked equal elements, one blank row: weighted distance 1.0
        elements = [el(0, 0, 2, 2), el(0, 4, 2, 6)]
        result = sweep_radius(elements, (1, 0.5, 1), [0.5, 0.9, 1.0, 2.0])
        counts = {eps: len(regions) for eps, regions in result}
        assert counts[0.5] == 2 and counts[0.9] == 2
        assert counts[1.0] == 1
        assert 2.0 not in counts  # early stop after reaching one region

    def test_counts_non_increasing(self, rng):
        for _ in range(20):
            elements = random_elements(rng, rng.randint(1, 15))
            result = sweep_radius(elements, (1, 0.5, 1), [0.2, 0.5, 1, 2, 4, 8])
            counts = [len(regions) for _, regions in result]
            assert counts == sorted(counts, reverse=True)

    def test_empty_and_invalid_grids(self):
        assert sweep_radius([], (1, 0.5, 1), [0.5])[0][1] == []
        with pytest.raises(ValueError):
            sweep_radius([el(0, 0, 1, 1)], (1, 0.5, 1), [])
        with pytest.raises(ValueError):
            sweep_radius([el(0, 0, 1, 1)], (1, 0.5, 1), [2.0, 1.0])


class TestSelectRadius:
    def test_static_default_without_gold(self):
        result = sweep_radius([el(0, 0, 1, 1)], (1, 0.5, 1), [0.5])
        assert select_radius(result, None) == 1.5

    def test_gold_match_selects_radius(self):
        elements = [el(0, 0, 2, 2), el(0, 4, 2, 6), el(0, 30, 2, 32)]
        result = sweep_radius(elements, (1, 0.5, 1), [0.5, 1.0, 8.0, 50.0])
        gold = [Rect(0, 0, 2, 6), Rect(0, 30, 2, 32)]
        # only eps=1.0 yields exactly the two gold regions
        assert select_radius(result, gold) == 1.0

    def test_tie_breaks_to_smallest(self):
        elements = [el(0, 0, 2, 2), el(0, 40, 2, 42)]
        result = sweep_radius(elements, (1, 0.5, 1), [0.5, 1.0, 2.0])
        gold = [Rect(0, 0, 2, 2), Rect(0, 40, 2, 42)]
        assert select_radius(result, gold) == 0.5
