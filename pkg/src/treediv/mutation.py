"""One-edge-exchange mutation of spanning trees.

A single exchange inserts a uniformly random non-member edge, which closes
exactly one cycle, and removes a uniformly random edge from the tree path
between the inserted edge's endpoints. The inserted edge itself is never
the removed one, so every exchange changes the tree.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphs import GraphInstance, edge_index, edge_of
from .mst import SpanningTree

__all__ = [
    "MutationStrategy",
    "parse_strategy",
    "sample_move_count",
    "cycle_path",
    "exchange",
    "one_edge_exchange",
    "mutate",
    "count_improving_exchanges",
]


@dataclass(frozen=True)
class MutationStrategy:
    """How many exchanges one mutation performs.

    kind "uniform": the count is uniform on {1, ..., l}.
    kind "poisson": the count is 1 + Poisson(lam), so every mutation
    performs at least one exchange.
    """

    kind: str
    l: int = 1
    lam: float = 1.0

    def __post_init__(self):
        if self.kind == "uniform":
            if self.l < 1:
                raise ValueError(f"uniform strategy needs l >= 1, got {self.l}")
        elif self.kind == "poisson":
            if not self.lam > 0:
                raise ValueError(f"poisson strategy needs lam > 0, got {self.lam}")
        else:
            raise ValueError(f"unknown strategy kind {self.kind!r}")

    @classmethod
    def uniform(cls, l: int) -> "MutationStrategy":
        return cls(kind="uniform", l=l)

    @classmethod
    def poisson(cls, lam: float = 1.0) -> "MutationStrategy":
        return cls(kind="poisson", lam=lam)

    @property
    def label(self) -> str:
        if self.kind == "uniform":
            return f"uniform:{self.l}"
        return "poisson" if self.lam == 1.0 else f"poisson:{self.lam:g}"


def parse_strategy(text: str) -> MutationStrategy:
    """Parse labels like "uniform:2" or "poisson" (optionally "poisson:0.5")."""
    name, _, arg = text.strip().partition(":")
    if name == "uniform":
        return MutationStrategy.uniform(int(arg) if arg else 1)
    if name == "poisson":
        return MutationStrategy.poisson(float(arg) if arg else 1.0)
    raise ValueError(f"unknown mutation strategy {text!r}")


def sample_move_count(strategy: MutationStrategy, rng: np.random.Generator) -> int:
    """Draw the number of exchanges for one mutation; always >= 1."""
    if strategy.kind == "uniform":
        if strategy.l == 1:
            return 1
        return 1 + int(rng.random() * strategy.l)
    return 1 + int(rng.poisson(strategy.lam))


def cycle_path(tree: SpanningTree, e: int) -> list[int]:
    """Edge ids of the tree path between the endpoints of the non-member
    edge e, ordered from e's lower endpoint to its higher one. Prepending e
    yields the cycle that inserting e closes."""
    if e in tree.edges:
        raise ValueError(f"edge {e} is a tree member, closes no cycle")
    u, v = edge_of(e, tree.n)
    return _tree_path(tree, u, v)


def _tree_path(tree: SpanningTree, u: int, v: int) -> list[int]:
    # BFS from u until v is reached, then read the path off the parent links
    n = tree.n
    parent = [-1] * n
    parent[u] = u
    frontier = [u]
    while parent[v] < 0:
        nxt = []
        for x in frontier:
            for y in tree.adj[x]:
                if parent[y] < 0:
                    parent[y] = x
                    nxt.append(y)
        frontier = nxt
    path = []
    x = v
    while x != u:
        p = parent[x]
        path.append(edge_index(p, x, n))
        x = p
    path.reverse()
    return path


def exchange(tree: SpanningTree, graph: GraphInstance, insert: int, remove: int) -> SpanningTree:
    """Deterministic single exchange: insert edge id `insert`, remove edge id
    `remove`, which must lie on the induced cycle. Returns a new tree."""
    if insert in tree.edges:
        raise ValueError(f"edge {insert} already in tree")
    path = cycle_path(tree, insert)
    if remove not in path:
        raise ValueError(f"edge {remove} not on the cycle closed by {insert}")
    out = tree.copy()
    _swap(out, graph, insert, remove)
    return out


def _swap(tree: SpanningTree, graph: GraphInstance, insert: int, remove: int) -> None:
    iu, iv = graph.endpoints(insert)
    ru, rv = graph.endpoints(remove)
    tree.edges.remove(remove)
    tree.adj[ru].remove(rv)
    tree.adj[rv].remove(ru)
    tree.edges.add(insert)
    tree.adj[iu].add(iv)
    tree.adj[iv].add(iu)
    tree.cost += graph.cost_of(insert) - graph.cost_of(remove)


def _exchange_in_place(tree: SpanningTree, graph: GraphInstance, rng: np.random.Generator) -> None:
    m = graph.m
    edges = tree.edges
    while True:
        e = int(rng.random() * m)
        if e not in edges:
            break
    path = _tree_path(tree, *graph.endpoints(e))
    out = path[int(rng.random() * len(path))]
    _swap(tree, graph, e, out)


def one_edge_exchange(
    tree: SpanningTree, graph: GraphInstance, rng: np.random.Generator
) -> SpanningTree:
    """Single random exchange: the inserted edge is uniform over the
    m-(n-1) non-members, the removed edge uniform over the induced cycle
    excluding the inserted edge. Returns a new valid spanning tree."""
    out = tree.copy()
    _exchange_in_place(out, graph, rng)
    return out


def mutate(
    tree: SpanningTree,
    graph: GraphInstance,
    strategy: MutationStrategy,
    rng: np.random.Generator,
) -> SpanningTree:
    """Apply sample_move_count(strategy) sequential exchanges to a copy."""
    out = tree.copy()
    for _ in range(sample_move_count(strategy, rng)):
        _exchange_in_place(out, graph, rng)
    return out


def count_improving_exchanges(tree: SpanningTree, other: SpanningTree, e: int) -> int:
    """Number of edges that can replace the member edge e of `tree` so that
    the result is again a spanning tree sharing strictly fewer edges with
    `other`.

    Replacements are the non-member edges across the cut that removing e
    opens; the count is those not used by `other` (when e is shared, each
    such replacement lowers the overlap by one).
    """
    if e not in tree.edges:
        raise ValueError(f"edge {e} is not a member of the tree")
    if e not in other.edges:
        return 0
    n = tree.n
    u, v = edge_of(e, n)
    # component of u in tree - e
    side = [False] * n
    side[u] = True
    stack = [u]
    while stack:
        x = stack.pop()
        for y in tree.adj[x]:
            if (x, y) in ((u, v), (v, u)):
                continue
            if not side[y]:
                side[y] = True
                stack.append(y)
    left = [x for x in range(n) if side[x]]
    right = [x for x in range(n) if not side[x]]
    count = 0
    for a in left:
        for b in right:
            f = edge_index(a, b, n)
            if f != e and f not in other.edges:
                count += 1
    return count
