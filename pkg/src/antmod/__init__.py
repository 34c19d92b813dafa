"""Ant-based local modularity optimization for community detection.

A colony of ants diffuses community labels over a graph under a simulated
annealing acceptance rule (single-layer SABA); iterated community coarsening
turns this into the multi-layer MABA, which yields a multi-scale hierarchy
and the maximal-modularity partition. Includes the evaluation stack
(modularity, per-vertex quality, NMI, partition density, weak-community and
resolution audits) and seeded benchmark generators.
"""

__version__ = "0.1.0"

from .generators import (BenchmarkInstance, gen_clique_pairs,
                         gen_clique_ring, gen_gn)
from .graph import (EdgeListParseError, Graph, NoEdgesError, Partition,
                    compact_labels, format_edge_list, format_partition,
                    from_edge_list, read_partition, relabel_compact,
                    singleton_partition)
from .maba import (Hierarchy, Level, best_partition, coarsen,
                   derive_level_seed, project_partition, run_maba)
from .metrics import (ResolutionReport, local_f, modularity,
                      modularity_naive, nmi, partition_density,
                      resolution_report, weak_community_check)
from .saba import (LabelChange, SabaConfig, SabaState,
                   acceptance_probability, ant_step, run_saba)

__all__ = [
    "__version__",
    "BenchmarkInstance", "gen_clique_pairs", "gen_clique_ring", "gen_gn",
    "EdgeListParseError", "Graph", "NoEdgesError", "Partition",
    "compact_labels", "format_edge_list", "format_partition",
    "from_edge_list", "read_partition", "relabel_compact",
    "singleton_partition",
    "Hierarchy", "Level", "best_partition", "coarsen", "derive_level_seed",
    "project_partition", "run_maba",
    "ResolutionReport", "local_f", "modularity", "modularity_naive", "nmi",
    "partition_density", "resolution_report", "weak_community_check",
    "LabelChange", "SabaConfig", "SabaState", "acceptance_probability",
    "ant_step", "run_saba",
]
