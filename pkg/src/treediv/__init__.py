"""Evolving diverse populations of spanning trees on complete graphs.

The library covers the full pipeline: weighted complete-graph instances,
minimum spanning trees, one-edge-exchange mutation, edge-overlap diversity
bookkeeping, a diversity-maximising (mu+1) evolutionary algorithm, exact
balanced constructions for comparison, and the statistics used to compare
mutation strategies. The `treediv` command line (see treediv.cli) wraps
replicated experiments around it.
"""

from .construct import (
    Decomposition,
    balanced_population,
    build_H,
    cycle_decomposition,
    path_decomposition,
    plateau_star_pair,
)
from .diversity import (
    FEATURE_NAMES,
    Population,
    diversity_after_removal,
    feature_diversity,
    overlap,
    population_diversity,
    tree_features,
    usage_spread,
)
from .ea import EAConfig, RunRecord, initialize, least_contribution_survivor, run, step
from .graphs import (
    GraphInstance,
    dump_instance,
    edge_index,
    edge_of,
    euclidean_instance,
    load_instance,
    unit_complete,
)
from .mst import SpanningTree, minimum_spanning_tree, random_spanning_tree, tree_cost
from .mutation import (
    MutationStrategy,
    count_improving_exchanges,
    cycle_path,
    exchange,
    mutate,
    one_edge_exchange,
    parse_strategy,
    sample_move_count,
)
from .stats import SampleSummary, mann_whitney_u, summarize

__version__ = "0.1.0"

__all__ = [
    "Decomposition",
    "EAConfig",
    "FEATURE_NAMES",
    "GraphInstance",
    "MutationStrategy",
    "Population",
    "RunRecord",
    "SampleSummary",
    "SpanningTree",
    "balanced_population",
    "build_H",
    "count_improving_exchanges",
    "cycle_decomposition",
    "cycle_path",
    "diversity_after_removal",
    "dump_instance",
    "edge_index",
    "edge_of",
    "euclidean_instance",
    "exchange",
    "feature_diversity",
    "initialize",
    "least_contribution_survivor",
    "load_instance",
    "mann_whitney_u",
    "minimum_spanning_tree",
    "mutate",
    "one_edge_exchange",
    "overlap",
    "parse_strategy",
    "path_decomposition",
    "plateau_star_pair",
    "population_diversity",
    "random_spanning_tree",
    "run",
    "sample_move_count",
    "step",
    "summarize",
    "tree_cost",
    "tree_features",
    "unit_complete",
    "usage_spread",
]
