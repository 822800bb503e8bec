"""Closed-form populations of maximum or near-maximum diversity.

Complete graphs decompose into edge-disjoint Hamiltonian paths (even n,
n/2 of them) or Hamiltonian cycles (odd n, (n-1)/2 of them, the classic
hub-and-zigzag construction). Stacking those parts gives populations whose
per-edge membership counts differ by at most one, and up to floor(n/2)
pairwise edge-disjoint trees, the largest diversity any population can
reach. These serve as exact oracles for what the evolutionary search should
approach.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diversity import Population
from .graphs import GraphInstance, edge_index, unit_complete
from .mst import SpanningTree

__all__ = [
    "Decomposition",
    "path_decomposition",
    "cycle_decomposition",
    "build_H",
    "balanced_population",
    "plateau_star_pair",
]


@dataclass(frozen=True)
class Decomposition:
    """Edge-disjoint parts exactly covering the complete graph on n nodes."""

    n: int
    kind: str  # "hamiltonian-paths" | "hamiltonian-cycles"
    parts: tuple[tuple[int, ...], ...]  # edge ids per part


def _zigzag(start: int, n: int) -> list[int]:
    # node sequence start, start+1, start-1, start+2, start-2, ... start+n/2
    # (mod n); consecutive differences cover every span exactly once
    seq = [start]
    for off in range(1, n // 2):
        seq.append((start + off) % n)
        seq.append((start - off) % n)
    seq.append((start + n // 2) % n)
    return seq


def _path_edges(seq: list[int], n: int) -> tuple[int, ...]:
    return tuple(edge_index(a, b, n) for a, b in zip(seq, seq[1:]))


def path_decomposition(n: int) -> Decomposition:
    """n/2 edge-disjoint spanning paths covering the complete graph, n even."""
    if n < 4 or n % 2:
        raise ValueError(f"path decomposition needs even n >= 4, got {n}")
    parts = tuple(_path_edges(_zigzag(i, n), n) for i in range(n // 2))
    return Decomposition(n=n, kind="hamiltonian-paths", parts=parts)


def cycle_decomposition(n: int) -> Decomposition:
    """(n-1)/2 edge-disjoint Hamiltonian cycles covering the complete graph,
    n odd: zigzag paths through the first n-1 nodes, closed through a hub at
    node n-1."""
    if n < 5 or n % 2 == 0:
        raise ValueError(f"cycle decomposition needs odd n >= 5, got {n}")
    hub = n - 1
    parts = []
    for i in range((n - 1) // 2):
        seq = _zigzag(i, n - 1)
        edges = (edge_index(hub, seq[0], n),) + _path_edges(seq, n) + (
            edge_index(seq[-1], hub, n),
        )
        parts.append(edges)
    return Decomposition(n=n, kind="hamiltonian-cycles", parts=tuple(parts))


def build_H(n: int) -> list[SpanningTree]:
    """The n-tree family over the unit complete graph, odd n >= 5, in which
    every edge appears exactly twice: each cycle of the decomposition minus
    its first hub edge, then the star at the hub, then each cycle minus its
    other hub edge. The star shares exactly one edge with every other
    member."""
    if n < 5 or n % 2 == 0:
        raise ValueError(f"need odd n >= 5, got {n}")
    graph = unit_complete(n)
    hub = n - 1
    cycles = cycle_decomposition(n).parts
    first: list[SpanningTree] = []
    second: list[SpanningTree] = []
    for i, cycle in enumerate(cycles):
        seq = _zigzag(i, n - 1)
        e1 = edge_index(hub, seq[0], n)
        e2 = edge_index(hub, seq[-1], n)
        first.append(SpanningTree.from_edges(graph, set(cycle) - {e1}))
        second.append(SpanningTree.from_edges(graph, set(cycle) - {e2}))
    star = SpanningTree.from_edges(graph, [edge_index(hub, v, n) for v in range(n - 1)])
    return first + [star] + second


def balanced_population(n: int, mu: int) -> Population:
    """mu spanning trees of the unit complete graph whose per-edge membership
    counts differ by at most one.

    For mu <= floor(n/2) the trees are pairwise edge-disjoint, so the
    population attains the maximum diversity mu*(mu-1)*(n-1); for odd n and
    mu = k*n every edge is used exactly 2k times.
    """
    if n < 4:
        raise ValueError(f"need n >= 4, got {n}")
    if mu < 1:
        raise ValueError(f"need mu >= 1, got {mu}")
    graph = unit_complete(n)
    if n % 2 == 0:
        base = [SpanningTree.from_edges(graph, p) for p in path_decomposition(n).parts]
    else:
        base = build_H(n)
    trees = [base[i % len(base)].copy() for i in range(mu)]
    return Population(graph, trees)


def plateau_star_pair(n: int) -> list[SpanningTree]:
    """Two stars over the unit complete graph, centered at nodes 0 and 1,
    sharing exactly the edge {0, 1}: the smallest two-tree state no single
    exchange can improve."""
    if n < 4:
        raise ValueError(f"need n >= 4, got {n}")
    graph = unit_complete(n)
    star0 = SpanningTree.from_edges(graph, [edge_index(0, v, n) for v in range(1, n)])
    star1 = SpanningTree.from_edges(graph, [edge_index(1, v, n) for v in range(n) if v != 1])
    return [star0, star1]
