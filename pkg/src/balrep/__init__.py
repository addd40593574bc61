"""Near-representative matchings and spanning subgraphs of labelled hosts.

The package constructs perfect matchings, hypergraph matchings, spanning
trees and bounded-degree spanning subgraphs whose edge-label sums stay close
to the representative target ``(e(G')/e(G)) * h(G)``, together with exhaustive
oracles, extremal instance generators, and a command-line front end.
"""

from .bipartite import decompose, solve_bipartite
from .core import (
    BipartiteInstance,
    BudgetError,
    CompleteInstance,
    HypergraphInstance,
    ImbalanceReport,
    InstanceError,
    InvariantError,
    Label,
    Matching,
    MultipartiteInstance,
    colour_to_vector,
    derive_seed,
    imbalance,
    instance_from_dict,
    instance_to_dict,
    load_instance,
    normalize,
    save_instance,
)
from .embed import (
    PartwiseEmbedding,
    PatternGraph,
    UniformPartition,
    bounded_degree_partition,
    embed_spanning,
    factor_partition,
    forest_balanced_deletion,
    forest_partition,
    host_partition,
    partwise_embed,
    pattern_from_dict,
    pattern_to_dict,
)
from .lowerbounds import (
    ConstructionSpec,
    gen_kn,
    gen_knn_modular,
    gen_knn_sqrt,
    verify_mod_invariant,
)
from .necklace import PathInstance, exhaustive_split_oracle, split_path
from .oracle import (
    DEFAULT_BUDGET,
    OracleBudget,
    has_balanced_pm,
    min_imbalance_pm,
    min_imbalance_spanning_tree,
)
from .reduce import solve_complete, solve_hypergraph, split_complete, split_hypergraph
from .relax import FractionalMatching, relax
from .spantree import balanced_spanning_tree, condition_check, matroid_intersection

__all__ = [
    "BipartiteInstance",
    "BudgetError",
    "CompleteInstance",
    "ConstructionSpec",
    "DEFAULT_BUDGET",
    "FractionalMatching",
    "HypergraphInstance",
    "ImbalanceReport",
    "InstanceError",
    "InvariantError",
    "Label",
    "Matching",
    "MultipartiteInstance",
    "OracleBudget",
    "PartwiseEmbedding",
    "PathInstance",
    "PatternGraph",
    "UniformPartition",
    "balanced_spanning_tree",
    "bounded_degree_partition",
    "colour_to_vector",
    "condition_check",
    "decompose",
    "derive_seed",
    "embed_spanning",
    "exhaustive_split_oracle",
    "factor_partition",
    "forest_balanced_deletion",
    "forest_partition",
    "gen_kn",
    "gen_knn_modular",
    "gen_knn_sqrt",
    "has_balanced_pm",
    "host_partition",
    "imbalance",
    "instance_from_dict",
    "instance_to_dict",
    "load_instance",
    "matroid_intersection",
    "min_imbalance_pm",
    "min_imbalance_spanning_tree",
    "normalize",
    "partwise_embed",
    "pattern_from_dict",
    "pattern_to_dict",
    "relax",
    "save_instance",
    "solve_bipartite",
    "solve_complete",
    "solve_hypergraph",
    "split_complete",
    "split_hypergraph",
    "split_path",
    "verify_mod_invariant",
]

__version__ = "0.1.0"
