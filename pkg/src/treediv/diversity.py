"""Edge-overlap diversity of spanning-tree populations.

A population of mu trees over an n-node graph has diversity

    mu*(mu-1)*(n-1) - sum over ordered pairs (i, j), i != j, of the number
    of edges trees i and j share,

which is maximal, mu*(mu-1)*(n-1), exactly when all trees are pairwise
edge-disjoint. The Population class keeps per-edge membership counts so the
pair sum and removal effects come out of O(n) updates instead of O(mu^2 n)
rescans.
"""

from __future__ import annotations

import numpy as np

from .graphs import GraphInstance
from .mst import SpanningTree

__all__ = [
    "Population",
    "overlap",
    "population_diversity",
    "usage_spread",
    "diversity_after_removal",
    "tree_features",
    "feature_diversity",
    "FEATURE_NAMES",
]

FEATURE_NAMES = ("max_degree", "leaf_count", "diameter")


def overlap(t1: SpanningTree, t2: SpanningTree) -> int:
    """Number of edges the two trees share; n-1 for identical trees."""
    return len(t1.edges & t2.edges)


class Population:
    """Ordered multiset of spanning trees with incremental bookkeeping.

    usage[e] counts the member trees containing edge e; overlap_sum is the
    ordered-pair overlap total, sum over e of usage[e]*(usage[e]-1).
    remove_at moves the last tree into the vacated slot, which is exactly
    the replacement semantics the evolutionary loop wants.
    """

    def __init__(self, graph: GraphInstance, trees=()):
        self.graph = graph
        self.trees: list[SpanningTree] = []
        self.usage = np.zeros(graph.m, dtype=np.int64)
        self.overlap_sum = 0
        cap = max(4, len(trees) + 1)
        self._rows = np.empty((cap, graph.n - 1), dtype=np.int64)
        for t in trees:
            self.add(t)

    def __len__(self) -> int:
        return len(self.trees)

    @property
    def size(self) -> int:
        return len(self.trees)

    def max_diversity(self) -> int:
        mu = len(self.trees)
        return mu * (mu - 1) * (self.graph.n - 1)

    def add(self, tree: SpanningTree) -> None:
        k = len(self.trees)
        if k == self._rows.shape[0]:
            grown = np.empty((2 * k, self._rows.shape[1]), dtype=np.int64)
            grown[:k] = self._rows
            self._rows = grown
        row = np.fromiter(tree.edges, dtype=np.int64, count=self.graph.n - 1)
        self._rows[k] = row
        self.overlap_sum += 2 * int(self.usage[row].sum())
        self.usage[row] += 1
        self.trees.append(tree)

    def remove_at(self, i: int) -> SpanningTree:
        k = len(self.trees)
        if not (0 <= i < k):
            raise IndexError(f"tree index {i} out of range for population of {k}")
        row = self._rows[i]
        self.usage[row] -= 1
        self.overlap_sum -= 2 * int(self.usage[row].sum())
        gone = self.trees[i]
        last = k - 1
        if i != last:
            self.trees[i] = self.trees[last]
            self._rows[i] = self._rows[last]
        self.trees.pop()
        return gone

    def diversity(self) -> int:
        return self.max_diversity() - self.overlap_sum

    def diversity_percent(self) -> float:
        dmax = self.max_diversity()
        if dmax == 0:
            return 100.0
        return 100.0 * self.diversity() / dmax

    def member_overlap_totals(self) -> np.ndarray:
        """For each tree, its summed overlap with all other members."""
        k = len(self.trees)
        rows = self._rows[:k]
        return self.usage[rows].sum(axis=1) - (self.graph.n - 1)

    def diversity_after_removal(self, i: int) -> int:
        k = len(self.trees)
        if not (0 <= i < k):
            raise IndexError(f"tree index {i} out of range for population of {k}")
        s_i = int(self.usage[self._rows[i]].sum()) - (self.graph.n - 1)
        mu = k - 1
        return mu * (mu - 1) * (self.graph.n - 1) - (self.overlap_sum - 2 * s_i)

    def usage_spread(self) -> tuple[int, int]:
        return int(self.usage.min()), int(self.usage.max())

    def check_consistency(self) -> None:
        """Recompute every cached quantity from scratch; raise on mismatch."""
        fresh = np.zeros(self.graph.m, dtype=np.int64)
        for t in self.trees:
            for e in t.edges:
                fresh[e] += 1
        if not np.array_equal(fresh, self.usage):
            raise AssertionError("usage counts out of sync")
        expect = int((fresh * (fresh - 1)).sum())
        if expect != self.overlap_sum:
            raise AssertionError(f"overlap_sum {self.overlap_sum} != {expect}")
        for i, t in enumerate(self.trees):
            if set(self._rows[i].tolist()) != t.edges:
                raise AssertionError(f"edge row {i} out of sync")


def population_diversity(pop: Population) -> int:
    """Pairwise edge-overlap diversity; 0 for a single tree or clones."""
    return pop.diversity()


def usage_spread(pop: Population) -> tuple[int, int]:
    """(min, max) of per-edge membership counts over all m edges."""
    return pop.usage_spread()


def diversity_after_removal(pop: Population, i: int) -> int:
    """Diversity of the population with tree i removed, in O(n)."""
    return pop.diversity_after_removal(i)


def tree_features(tree: SpanningTree) -> tuple[int, int, int]:
    """(max degree, number of leaves, diameter in edges) of a tree."""
    degs = [len(s) for s in tree.adj]
    max_degree = max(degs)
    leaves = sum(1 for d in degs if d == 1)
    far, _ = _farthest(tree, 0)
    _, diameter = _farthest(tree, far)
    return max_degree, leaves, diameter


def _farthest(tree: SpanningTree, start: int) -> tuple[int, int]:
    dist = [-1] * tree.n
    dist[start] = 0
    frontier = [start]
    node, depth = start, 0
    while frontier:
        nxt = []
        for x in frontier:
            for y in tree.adj[x]:
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    if dist[y] > depth:
                        node, depth = y, dist[y]
                    nxt.append(y)
        frontier = nxt
    return node, depth


def feature_diversity(pop: Population, which: str) -> float:
    """Distinct values of one tree feature across the population, as a
    percentage of the most that could be realized, min(mu, n-2).

    The features range over the n-2 integers {2, ..., n-1} (paths and stars
    are the extremes), and mu trees can realize at most mu distinct values,
    so 100 percent is attainable whenever theory allows it.
    """
    try:
        idx = FEATURE_NAMES.index(which)
    except ValueError:
        raise ValueError(f"unknown feature {which!r}, expected one of {FEATURE_NAMES}") from None
    if len(pop) == 0:
        raise ValueError("empty population has no feature diversity")
    values = {tree_features(t)[idx] for t in pop.trees}
    limit = min(len(pop), pop.graph.n - 2)
    return 100.0 * len(values) / limit
