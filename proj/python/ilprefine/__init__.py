"""Exact ILP-based refinement of balanced graph partitions."""

from ._ilprefine import (
    CoarseModel,
    Error,
    Graph,
    IlpInstance,
    KeptSet,
    Partition,
    SolveResult,
    bootstrap,
    boundary_vertices,
    build_ilp,
    cut_value,
    evaluate,
    gain,
    is_balanced,
    l_max,
    load_graph,
    parse_metis,
    read_partition,
    refine,
    select,
    solve,
    solve_exhaustive,
    to_metis,
    write_partition,
)

__all__ = [
    "CoarseModel",
    "Error",
    "Graph",
    "IlpInstance",
    "KeptSet",
    "Partition",
    "SolveResult",
    "bootstrap",
    "boundary_vertices",
    "build_ilp",
    "cut_value",
    "evaluate",
    "gain",
    "is_balanced",
    "l_max",
    "load_graph",
    "parse_metis",
    "read_partition",
    "refine",
    "select",
    "solve",
    "solve_exhaustive",
    "to_metis",
    "write_partition",
]
