"""File layouts as complete region graphs, matched by similarity flooding.

A file's layout is the complete graph over its regions with edges labeled
by spatial relationship. Two layouts are compared by flooding an initial
fingerprint-similarity matrix through edge-similarity-weighted
neighborhoods, then reading off a maximum-weight bipartite matching. The
per-direction score divides by the larger node count, which bounds the
similarity of graphs of different sizes by min(U,V)/max(U,V).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .cluster import Region
from .config import FLOOD_MAX_ITER, FLOOD_STOP_EPS
from .fingerprint import region_similarity
from .geometry import SpatialRelation, relation

__all__ = [
    "EmptyLayoutError",
    "LayoutGraph",
    "NodeSimMatrix",
    "EdgeSimTable",
    "build_layout",
    "edge_similarity",
    "initial_similarity",
    "flood",
    "layout_similarity",
    "layout_to_json",
    "node_count_bound",
]


class EmptyLayoutError(ValueError):
    """Raised when building a layout graph from zero regions."""


@dataclass
class LayoutGraph:
    """Complete graph over a file's regions with spatial edge labels."""

    nodes: list[Region]
    edges: dict[tuple[int, int], SpatialRelation]

    @property
    def size(self) -> int:
        return len(self.nodes)

    def edge(self, i: int, j: int) -> SpatialRelation | None:
        if i == j:
            return None
        key = (i, j) if i < j else (j, i)
        return self.edges.get(key)


def build_layout(regions: list[Region]) -> LayoutGraph:
    """Complete layout graph; region boundaries may overlap."""
    if not regions:
        raise EmptyLayoutError("a layout needs at least one region")
    edges = {}
    for i in range(len(regions)):
        for j in range(i + 1, len(regions)):
            edges[(i, j)] = relation(
                regions[i].boundary, regions[j].boundary, allow_overlap=True
            )
    return LayoutGraph(nodes=list(regions), edges=edges)


def edge_similarity(e1: SpatialRelation, e2: SpatialRelation) -> float:
    """Similarity of two edge labels in [0, 1].

    Zero when the alignment directions differ; otherwise one minus the
    normalized Euclidean distance of the (magnitude, distance) features,
    each feature scaled by its per-pair maximum (floored at 1 to guard
    zero features).
    """
    if e1.direction != e2.direction:
        return 0.0
    m_hat = abs(e1.magnitude - e2.magnitude) / max(e1.magnitude, e2.magnitude, 1.0)
    d_hat = abs(e1.distance - e2.distance) / max(e1.distance, e2.distance, 1.0)
    return 1.0 - (m_hat * m_hat + d_hat * d_hat) ** 0.5 / 2 ** 0.5


@dataclass
class NodeSimMatrix:
    """U x V node-pair similarities; max-normalized after each iteration."""

    values: np.ndarray
    iteration: int = 0


class EdgeSimTable:
    """Edge similarities keyed by an unordered node pair from each graph.

    Entries are 0 whenever either pair lacks a connecting edge (including
    a node paired with itself) or the two edges have different alignment
    directions.
    """

    def __init__(self, g_a: LayoutGraph, g_b: LayoutGraph):
        self._table: dict[tuple[tuple[int, int], tuple[int, int]], float] = {}
        for (i, m), edge_a in g_a.edges.items():
            for (j, n), edge_b in g_b.edges.items():
                self._table[((i, m), (j, n))] = edge_similarity(edge_a, edge_b)

    def get(self, pair_a: tuple[int, int], pair_b: tuple[int, int]) -> float:
        i, m = pair_a
        j, n = pair_b
        if i == m or j == n:
            return 0.0
        key = ((i, m) if i < m else (m, i), (j, n) if j < n else (n, j))
        return self._table.get(key, 0.0)


def initial_similarity(g_a: LayoutGraph, g_b: LayoutGraph) -> NodeSimMatrix:
    """Fingerprint similarity for every node pair."""
    values = np.zeros((g_a.size, g_b.size))
    for i, u in enumerate(g_a.nodes):
        for j, v in enumerate(g_b.nodes):
            if u.fingerprint is None or v.fingerprint is None:
                raise ValueError("layout nodes must carry fingerprints")
            values[i, j] = region_similarity(u.fingerprint, v.fingerprint)
    return NodeSimMatrix(values=values)


def _normalize(values: np.ndarray) -> np.ndarray:
    peak = values.max() if values.size else 0.0
    return values / peak if peak > 0 else values


def flood(
    g_a: LayoutGraph,
    g_b: LayoutGraph,
    sim0: NodeSimMatrix,
    eps_stop: float = FLOOD_STOP_EPS,
    max_iter: int = FLOOD_MAX_ITER,
) -> NodeSimMatrix:
    """Propagate node similarities through the two graphs until stable.

    Each iteration adds, on top of the initial similarities, the previous
    similarity of neighboring node pairs weighted by edge similarity. For
    a fixed pair (i, j) and each neighbor m of i, only the neighbor of j
    whose edge is most similar contributes (we look for a 1:1 match), and
    contributions are damped by 2^|deg(i) - deg(j)| to keep unbalanced
    neighborhoods from dominating. The matrix is max-normalized after
    every iteration; the loop stops when the L2 difference between
    consecutive matrices falls below ``eps_stop`` or after ``max_iter``
    iterations.
    """
    if eps_stop <= 0 or max_iter < 1:
        raise ValueError("eps_stop must be positive and max_iter >= 1")
    u_count, v_count = g_a.size, g_b.size
    if sim0.values.shape != (u_count, v_count):
        raise ValueError("sim0 shape does not match the graphs")
    phi = EdgeSimTable(g_a, g_b)

    # best counterpart in g_b for each (i, its neighbor m, j): static table;
    # exact ties prefer n == m so equal edge labels route along matching
    # node indices instead of smearing into unrelated pairs
    best: dict[tuple[int, int, int], tuple[float, int]] = {}
    for i in range(u_count):
        for m in range(u_count):
            if m == i:
                continue
            for j in range(v_count):
                top_phi, top_n = 0.0, -1
                for n in range(v_count):
                    if n == j:
                        continue
                    value = phi.get((i, m), (j, n))
                    if value > top_phi or (value == top_phi and n == m):
                        top_phi, top_n = value, n
                best[(i, m, j)] = (top_phi, top_n)

    sigma0 = _normalize(sim0.values.astype(np.float64).copy())
    damping = 2.0 ** abs((u_count - 1) - (v_count - 1))
    sigma = sigma0
    iteration = 0
    for iteration in range(1, max_iter + 1):
        flooded = sigma0.copy()
        for i in range(u_count):
            for j in range(v_count):
                total = 0.0
                for m in range(u_count):
                    if m == i:
                        continue
                    top_phi, top_n = best[(i, m, j)]
                    if top_n >= 0:
                        total += sigma[m, top_n] * top_phi
                flooded[i, j] += total / damping
        updated = _normalize(flooded)
        diff = float(np.linalg.norm(updated - sigma))
        sigma = updated
        if diff < eps_stop:
            break
    return NodeSimMatrix(values=sigma, iteration=iteration)


def _matching_score(values: np.ndarray) -> float:
    rows, cols = linear_sum_assignment(values, maximize=True)
    return float(values[rows, cols].sum()) / max(values.shape)


def layout_similarity(
    g_a: LayoutGraph,
    g_b: LayoutGraph,
    eps_stop: float = FLOOD_STOP_EPS,
    max_iter: int = FLOOD_MAX_ITER,
) -> float:
    """Symmetric layout similarity in [0, 1].

    Flooding runs in both directions (normalization makes a single run
    asymmetric); each direction scores a maximum-weight bipartite matching
    over the final node similarities, divided by the larger node count,
    and the two scores are averaged.
    """
    sim0 = initial_similarity(g_a, g_b)
    forward = flood(g_a, g_b, sim0, eps_stop, max_iter)
    backward = flood(
        g_b, g_a, NodeSimMatrix(values=sim0.values.T.copy()), eps_stop, max_iter
    )
    return (_matching_score(forward.values) + _matching_score(backward.values)) / 2.0


def node_count_bound(g_a: LayoutGraph, g_b: LayoutGraph) -> float:
    """Upper bound on layout similarity from the node counts alone."""
    u_count, v_count = g_a.size, g_b.size
    return min(u_count, v_count) / max(u_count, v_count)


def layout_to_json(graph: LayoutGraph) -> dict:
    """Plain-dict form of a layout graph: nodes with their boundary and
    fingerprint, edges with the spatial-relation features."""
    nodes = []
    for region in graph.nodes:
        b = region.boundary
        nodes.append(
            {
                "id": region.id,
                "boundary": {"x0": b.x0, "y0": b.y0, "x1": b.x1, "y1": b.y1},
                "fingerprint": None if region.fingerprint is None else region.fingerprint.to_list(),
            }
        )
    edges = [
        {
            "i": i,
            "j": j,
            "direction": rel.direction.value,
            "magnitude": rel.magnitude,
            "distance": rel.distance,
        }
        for (i, j), rel in sorted(graph.edges.items())
    ]
    return {"nodes": nodes, "edges": edges}
