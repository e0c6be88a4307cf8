"""Distance-k matchings and k-packings in small graphs.

Exact solvers, class recognition, reduction gadgets and brute-force
verification suites. Everything is a pure function of immutable inputs.
"""
from ._search import BUDGET_ENV, BudgetExceeded
from .classes import (
    PartitionFailure,
    RkCertificate,
    SimplicialPartition,
    SunEmbedding,
    find_induced_sun,
    is_chordal,
    is_in_Rk,
    simplicial_clique_partition,
    simplicial_vertices,
    validate_rk_certificate,
    verify_sun,
)
from .enumeration import (
    canonical_form,
    connected_graphs_up_to,
    enumerate_connected_chordal_graphs,
    enumerate_connected_graphs,
    enumerate_formulas,
    enumerate_set_cover_instances,
)
from .formats import (
    FormatError,
    format_graph,
    parse_dimacs,
    parse_graph,
    parse_graph_file,
    parse_set_cover,
)
from .gadgets import (
    CnfFormula,
    GadgetGraph,
    SetCoverInstance,
    sat_to_graph,
    setcover_to_wmmm,
    t_transform,
)
from .graph import (
    UNREACHABLE,
    Graph,
    GraphError,
    WeightedGraph,
    bfs_distances,
    edge_distance,
    edge_neighborhood,
    graph_power,
    line_graph,
)
from .matching import (
    Matching,
    SolveResult,
    check_matching,
    greedy_maximal,
    is_k_equimatchable,
    max_matching,
    min_maximal_matching,
    min_weight_maximal_matching,
)
from .packing import (
    PackingParameters,
    domination_number,
    independent_domination_number,
    is_k_equipackable,
    packing_number,
    packing_parameters,
)

__all__ = [name for name in dir() if not name.startswith("_")]
