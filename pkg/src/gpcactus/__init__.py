"""General position numbers of graphs, with cactus and wheel specializations."""

from gpcactus.graph import (
    DistanceMatrix,
    Graph,
    GraphError,
    InvalidVertex,
    NotSimple,
    ParseError,
    Unreachable,
    UNREACHABLE,
    all_pairs_distances,
    build_graph,
    interval,
    is_connected,
    parse_edge_list,
)
from gpcactus.solver import (
    GpCertificate,
    Method,
    SolverTimeout,
    TooLarge,
    conflict_triples,
    gp_number,
    gp_number_exact,
    gp_number_naive,
    greedy_general_position,
    is_general_position,
)

__version__ = "0.1.0"

__all__ = [
    "DistanceMatrix",
    "Graph",
    "GraphError",
    "InvalidVertex",
    "NotSimple",
    "ParseError",
    "Unreachable",
    "UNREACHABLE",
    "all_pairs_distances",
    "build_graph",
    "interval",
    "is_connected",
    "parse_edge_list",
    "GpCertificate",
    "Method",
    "SolverTimeout",
    "TooLarge",
    "conflict_triples",
    "gp_number",
    "gp_number_exact",
    "gp_number_naive",
    "greedy_general_position",
    "is_general_position",
]
