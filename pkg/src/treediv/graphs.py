"""Complete weighted graphs with a canonical edge numbering.

Edges of the complete graph on nodes 0..n-1 are numbered 0..m-1 in
lexicographic order of their endpoint pairs (u, v) with u < v:
(0,1), (0,2), ..., (0,n-1), (1,2), ... All other modules traffic in
these integer edge ids.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "GraphInstance",
    "edge_index",
    "edge_of",
    "unit_complete",
    "euclidean_instance",
    "dump_instance",
    "load_instance",
]


def _row_offset(u: int, n: int) -> int:
    # number of pairs (a, b) with a < u
    return u * n - (u * (u + 1)) // 2


def edge_index(u: int, v: int, n: int) -> int:
    """Canonical id of the edge {u, v} in the complete graph on n nodes."""
    if u == v:
        raise ValueError(f"self-loop ({u},{v}) has no edge index")
    if not (0 <= u < n and 0 <= v < n):
        raise ValueError(f"nodes ({u},{v}) out of range for n={n}")
    if u > v:
        u, v = v, u
    return _row_offset(u, n) + (v - u - 1)


def edge_of(index: int, n: int) -> tuple[int, int]:
    """Endpoint pair (u, v), u < v, of a canonical edge id. Inverse of edge_index."""
    m = n * (n - 1) // 2
    if not (0 <= index < m):
        raise ValueError(f"edge index {index} out of range for n={n} (m={m})")
    # solve the largest u with _row_offset(u) <= index, then correct for
    # float error in the square root
    u = int((2 * n - 1 - math.sqrt((2 * n - 1) ** 2 - 8 * index)) / 2)
    u = max(0, min(u, n - 2))
    while _row_offset(u + 1, n) <= index:
        u += 1
    while _row_offset(u, n) > index:
        u -= 1
    v = index - _row_offset(u, n) + u + 1
    return u, v


@dataclass
class GraphInstance:
    """A complete graph with positive edge costs.

    costs[i] is the cost of the edge with canonical id i. For euclidean
    instances, points holds the n planar coordinates the costs derive from.
    """

    n: int
    costs: np.ndarray
    kind: str
    points: np.ndarray | None = None

    # per-id endpoint lookup tables, built once (plain lists: fast scalar access)
    _eu: list[int] = field(init=False, repr=False)
    _ev: list[int] = field(init=False, repr=False)
    _cost_list: list[float] = field(init=False, repr=False)
    _opt_cost: float | None = field(default=None, init=False, repr=False)

    def __post_init__(self):
        n = self.n
        m = n * (n - 1) // 2
        self.costs = np.asarray(self.costs, dtype=np.float64)
        if self.costs.shape != (m,):
            raise ValueError(f"expected {m} costs for n={n}, got shape {self.costs.shape}")
        if not np.all(self.costs > 0):
            raise ValueError("all edge costs must be strictly positive")
        if self.kind == "unit":
            if not np.all(self.costs == 1.0):
                raise ValueError("unit instance must have all costs equal to 1")
        elif self.kind == "euclidean":
            if self.points is None:
                raise ValueError("euclidean instance requires points")
            self.points = np.asarray(self.points, dtype=np.float64)
            if self.points.shape != (n, 2):
                raise ValueError(f"expected {n} planar points, got {self.points.shape}")
            iu, iv = np.triu_indices(n, k=1)
            dists = np.hypot(*(self.points[iu] - self.points[iv]).T)
            if not np.array_equal(dists, self.costs):
                raise ValueError("costs inconsistent with point distances")
        else:
            raise ValueError(f"unknown instance kind {self.kind!r}")
        iu, iv = np.triu_indices(n, k=1)
        self._eu = iu.tolist()
        self._ev = iv.tolist()
        self._cost_list = self.costs.tolist()

    @property
    def m(self) -> int:
        return self.n * (self.n - 1) // 2

    def endpoints(self, index: int) -> tuple[int, int]:
        return self._eu[index], self._ev[index]

    def cost_of(self, index: int) -> float:
        return self._cost_list[index]

    def opt_cost(self) -> float:
        """Cost of a minimum spanning tree, computed once and cached."""
        if self._opt_cost is None:
            from .mst import minimum_spanning_tree

            _, self._opt_cost = minimum_spanning_tree(self)
        return self._opt_cost


def unit_complete(n: int) -> GraphInstance:
    """Complete graph on n >= 4 nodes with every edge cost equal to 1."""
    if n < 4:
        raise ValueError(f"need n >= 4, got {n}")
    m = n * (n - 1) // 2
    return GraphInstance(n=n, costs=np.ones(m), kind="unit")


def euclidean_instance(n: int, seed: int) -> GraphInstance:
    """Complete graph on n >= 4 points drawn uniformly from the unit square.

    Costs are pairwise Euclidean distances; identical seeds give identical
    instances.
    """
    if n < 4:
        raise ValueError(f"need n >= 4, got {n}")
    rng = np.random.default_rng(seed)
    points = rng.random((n, 2))
    iu, iv = np.triu_indices(n, k=1)
    costs = np.hypot(*(points[iu] - points[iv]).T)
    return GraphInstance(n=n, costs=costs, kind="euclidean", points=points)


def dump_instance(graph: GraphInstance, path) -> None:
    """Write an instance as text: first line "n kind", then one "x y" line
    per point for euclidean instances. Costs are recomputed on load."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{graph.n} {graph.kind}\n")
        if graph.kind == "euclidean":
            for x, y in graph.points:
                fh.write(f"{x!r} {y!r}\n")


def load_instance(path) -> GraphInstance:
    """Read an instance written by dump_instance."""
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise ValueError(f"bad instance header {header!r}")
        n, kind = int(header[0]), header[1]
        if kind == "unit":
            return unit_complete(n)
        if kind != "euclidean":
            raise ValueError(f"unknown instance kind {kind!r}")
        points = np.loadtxt(io.StringIO(fh.read()), ndmin=2)
        if points.shape != (n, 2):
            raise ValueError(f"expected {n} points, got {points.shape}")
        iu, iv = np.triu_indices(n, k=1)
        costs = np.hypot(*(points[iu] - points[iv]).T)
        return GraphInstance(n=n, costs=costs, kind="euclidean", points=points)
