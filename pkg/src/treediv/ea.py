"""Diversity-maximising (mu+1) evolutionary algorithm over spanning trees.

Each iteration mutates a uniformly chosen parent, discards the offspring if
its cost exceeds (1+alpha) times the minimum spanning tree cost, and
otherwise lets it into the population, evicting whichever of the mu+1
candidates contributes least to the edge-overlap diversity, ties broken
uniformly. Every offspring, kept or not, costs one function evaluation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .diversity import FEATURE_NAMES, Population, feature_diversity
from .graphs import GraphInstance
from .mst import SpanningTree, minimum_spanning_tree
from .mutation import MutationStrategy, mutate

__all__ = ["EAConfig", "RunRecord", "initialize", "least_contribution_survivor", "step", "run"]


@dataclass
class EAConfig:
    """Settings for one evolutionary run.

    alpha is the quality slack: resident trees must cost at most
    (1+alpha)*OPT. Use math.inf for unconstrained runs. budget defaults to
    mu*n^2 evaluations when left as None. init "mst-clones" starts from mu
    copies of the minimum spanning tree (always within the quality gate);
    init "given" starts from the trees listed in initial_edges.
    """

    mu: int
    alpha: float = math.inf
    strategy: MutationStrategy = field(default_factory=lambda: MutationStrategy.uniform(1))
    budget: int | None = None
    seed: int = 0
    init: str = "mst-clones"
    initial_edges: tuple[tuple[int, ...], ...] | None = None
    stop_at_max: bool = True
    track_trajectory: bool = False

    def __post_init__(self):
        if self.mu < 1:
            raise ValueError(f"population size must be >= 1, got {self.mu}")
        if self.alpha < 0:
            raise ValueError(f"quality slack must be >= 0, got {self.alpha}")
        if self.budget is not None and self.budget < 1:
            raise ValueError(f"budget must be >= 1, got {self.budget}")
        if self.init not in ("mst-clones", "given"):
            raise ValueError(f"unknown init mode {self.init!r}")
        if self.init == "given" and not self.initial_edges:
            raise ValueError("init 'given' requires initial_edges")

    def budget_for(self, graph: GraphInstance) -> int:
        return self.budget if self.budget is not None else self.mu * graph.n * graph.n


@dataclass
class RunRecord:
    """Outcome of one run; population is the final state, not serialized."""

    evaluations: int
    d_o_abs: int
    d_o_pct: float
    hit_budget: bool
    feature_div: dict[str, float]
    trajectory: list[tuple[int, int]] | None
    population: Population


def initialize(graph: GraphInstance, cfg: EAConfig, rng: np.random.Generator) -> Population:
    """Population of mu trees all within the quality gate.

    The default mode clones the minimum spanning tree, which satisfies any
    alpha >= 0. Given trees are validated against the gate.
    """
    threshold = (1.0 + cfg.alpha) * graph.opt_cost() if math.isfinite(cfg.alpha) else math.inf
    if cfg.init == "given":
        trees = [SpanningTree.from_edges(graph, ids) for ids in cfg.initial_edges]
        if len(trees) != cfg.mu:
            raise ValueError(f"expected {cfg.mu} initial trees, got {len(trees)}")
        for t in trees:
            if t.cost > threshold:
                raise ValueError(f"initial tree cost {t.cost} exceeds quality gate {threshold}")
    else:
        mst, _ = minimum_spanning_tree(graph)
        trees = [mst.copy() for _ in range(cfg.mu)]
    return Population(graph, trees)


def least_contribution_survivor(pool: Population, rng: np.random.Generator) -> int:
    """Index of the tree to evict from a (mu+1)-pool: one whose removal
    leaves the highest diversity, i.e. whose total overlap with the rest is
    largest; ties are broken uniformly at random (the offspring included)."""
    totals = pool.member_overlap_totals()
    best = totals.max()
    ties = np.flatnonzero(totals == best)
    if len(ties) == 1:
        return int(ties[0])
    return int(ties[int(rng.random() * len(ties))])


def step(
    pop: Population, graph: GraphInstance, cfg: EAConfig, rng: np.random.Generator
) -> tuple[Population, bool]:
    """One iteration: mutate a random parent and, if it passes the quality
    gate, admit it and evict the least-contributing member. Returns the
    population (modified in place) and whether the offspring was admitted."""
    parent = pop.trees[int(rng.random() * len(pop.trees))]
    child = mutate(parent, graph, cfg.strategy, rng)
    if math.isfinite(cfg.alpha) and child.cost > (1.0 + cfg.alpha) * graph.opt_cost():
        return pop, False
    pop.add(child)
    pop.remove_at(least_contribution_survivor(pop, rng))
    return pop, True


def run(graph: GraphInstance, cfg: EAConfig) -> RunRecord:
    """Iterate until the diversity cannot improve or the budget is spent.

    Deterministic in (graph, cfg): the generator is seeded from cfg.seed and
    initialization consumes no randomness.
    """
    rng = np.random.default_rng(cfg.seed)
    pop = initialize(graph, cfg, rng)
    budget = cfg.budget_for(graph)
    dmax = pop.max_diversity()
    d = pop.diversity()
    trajectory = [(0, d)] if cfg.track_trajectory else None
    evaluations = 0
    while evaluations < budget and not (cfg.stop_at_max and d == dmax):
        _, accepted = step(pop, graph, cfg, rng)
        evaluations += 1
        if accepted:
            new_d = pop.diversity()
            assert new_d >= d, "diversity decreased across an accepted step"
            if trajectory is not None and new_d != d:
                trajectory.append((evaluations, new_d))
            d = new_d
    return RunRecord(
        evaluations=evaluations,
        d_o_abs=d,
        d_o_pct=100.0 if dmax == 0 else 100.0 * d / dmax,
        hit_budget=evaluations >= budget and d != dmax,
        feature_div={name: feature_diversity(pop, name) for name in FEATURE_NAMES},
        trajectory=trajectory,
        population=pop,
    )
