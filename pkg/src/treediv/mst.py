"""Spanning trees of complete graphs and a dense-graph Prim solver."""

from __future__ import annotations

import numpy as np

from .graphs import GraphInstance, edge_index

__all__ = [
    "SpanningTree",
    "minimum_spanning_tree",
    "tree_cost",
    "random_spanning_tree",
]


class SpanningTree:
    """A spanning tree held as a set of canonical edge ids plus adjacency.

    Instances built through from_edges are validated; the mutation operators
    produce new trees by copying and swapping single edges, which preserves
    validity without re-checking. Treat the attributes as read-only.
    """

    __slots__ = ("n", "edges", "adj", "cost")

    def __init__(self, n: int, edges: set[int], adj: list[set[int]], cost: float):
        self.n = n
        self.edges = edges
        self.adj = adj
        self.cost = cost

    @classmethod
    def from_edges(cls, graph: GraphInstance, edge_ids) -> "SpanningTree":
        """Build and validate a spanning tree from n-1 canonical edge ids."""
        n = graph.n
        ids = list(edge_ids)
        if len(ids) != n - 1:
            raise ValueError(f"spanning tree of n={n} needs {n - 1} edges, got {len(ids)}")
        edges = set(ids)
        if len(edges) != n - 1:
            raise ValueError("duplicate edges in spanning tree")
        adj: list[set[int]] = [set() for _ in range(n)]
        cost = 0.0
        for e in ids:
            if not (0 <= e < graph.m):
                raise ValueError(f"edge id {e} out of range (m={graph.m})")
            u, v = graph.endpoints(e)
            adj[u].add(v)
            adj[v].add(u)
            cost += graph.cost_of(e)
        # n-1 edges + connected => acyclic
        seen = [False] * n
        stack = [0]
        seen[0] = True
        count = 1
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    count += 1
                    stack.append(y)
        if count != n:
            raise ValueError("edge set is not connected")
        return cls(n, edges, adj, cost)

    def copy(self) -> "SpanningTree":
        return SpanningTree(self.n, set(self.edges), [set(s) for s in self.adj], self.cost)

    def edge_pairs(self) -> list[tuple[int, int]]:
        """Member edges as sorted (u, v) pairs, for printing and inspection."""
        from .graphs import edge_of

        return sorted(edge_of(e, self.n) for e in self.edges)

    def degree(self, node: int) -> int:
        return len(self.adj[node])

    def __contains__(self, edge_id: int) -> bool:
        return edge_id in self.edges

    def __repr__(self) -> str:
        return f"SpanningTree(n={self.n}, cost={self.cost:.6g})"


def minimum_spanning_tree(graph: GraphInstance) -> tuple[SpanningTree, float]:
    """Minimum spanning tree by Prim's algorithm with a full adjacency scan.

    Cost ties are broken toward the smaller canonical edge id, so the result
    is a deterministic function of the instance.
    """
    n = graph.n
    in_tree = [False] * n
    in_tree[0] = True
    best_cost = [0.0] * n
    best_parent = [0] * n
    best_eid = [0] * n
    for v in range(1, n):
        e = edge_index(0, v, n)
        best_cost[v] = graph.cost_of(e)
        best_eid[v] = e
    chosen: list[int] = []
    for _ in range(n - 1):
        pick = -1
        for v in range(1, n):
            if in_tree[v]:
                continue
            if pick < 0 or (best_cost[v], best_eid[v]) < (best_cost[pick], best_eid[pick]):
                pick = v
        in_tree[pick] = True
        chosen.append(best_eid[pick])
        for v in range(1, n):
            if in_tree[v]:
                continue
            e = edge_index(pick, v, n)
            c = graph.cost_of(e)
            if (c, e) < (best_cost[v], best_eid[v]):
                best_cost[v] = c
                best_parent[v] = pick
                best_eid[v] = e
    tree = SpanningTree.from_edges(graph, chosen)
    return tree, tree.cost


def tree_cost(tree: SpanningTree, graph: GraphInstance) -> float:
    """Exact sum of the member edge costs (recomputed, not the cached value)."""
    total = 0.0
    for e in tree.edges:
        if not (0 <= e < graph.m):
            raise ValueError(f"edge id {e} out of range (m={graph.m})")
        total += graph.cost_of(e)
    return total


def random_spanning_tree(graph: GraphInstance, rng: np.random.Generator) -> SpanningTree:
    """Uniform random labelled tree via a random Pruefer sequence."""
    n = graph.n
    if n == 2:
        return SpanningTree.from_edges(graph, [0])
    seq = rng.integers(0, n, size=n - 2)
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    ids = []
    # smallest leaf not yet used, maintained with a scanning pointer
    ptr = 0
    while degree[ptr] != 1:
        ptr += 1
    leaf = ptr
    for x in seq:
        ids.append(edge_index(leaf, int(x), n))
        degree[x] -= 1
        if degree[x] == 1 and x < ptr:
            leaf = int(x)
        else:
            ptr += 1
            while degree[ptr] != 1:
                ptr += 1
            leaf = ptr
    ids.append(edge_index(leaf, n - 1, n))
    return SpanningTree.from_edges(graph, ids)
