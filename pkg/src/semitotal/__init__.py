"""Exact-computation laboratory for semi-total domination of Cartesian
product graphs: invariants, product lower bounds, and full replay of the
bound argument's constructions on concrete instances."""

__version__ = "0.1.0"

from .graphs import (
    INF,
    Graph,
    ProductGraph,
    VertexSet,
    cartesian_product,
    closed_neighborhood,
    dist,
    from_edge_list,
    generate,
    is_isolate_free,
    open_neighborhood,
)
from .graph6 import Graph6Error, emit_graph6, parse_graph6
from .catalog import connected_graphs
from .solvers import (
    KINDS,
    InvariantResult,
    IsolateError,
    OracleLimitError,
    enumerate_min_semitotal_sets,
    is_dominating,
    is_semitotal_dominating,
    is_total_dominating,
    is_two_packing,
    lexleast_min_semitotal_set,
    solve,
    solve_bnb,
    solve_oracle,
)
from .proofs import (
    AlliedPartition,
    CellPartition,
    CellProfile,
    ColumnReport,
    ConnectorResult,
    CountingChecks,
    CoverIndex,
    FalsificationError,
    allied_split,
    build_cell_partition,
    build_column_witness,
    build_connector_set,
    build_cover_index,
    cell_partition_violations,
    check_column_bounds,
    counting_checks,
    max_allied_set,
    project_profiles,
)
from .harness import (
    HuntReport,
    InstanceRecord,
    ScanOptions,
    ScanSummary,
    hunt_conjecture,
    hunt_from_records,
    scan,
    summarize,
    verify_pair,
)

__all__ = [
    "INF",
    "Graph",
    "ProductGraph",
    "VertexSet",
    "cartesian_product",
    "closed_neighborhood",
    "open_neighborhood",
    "dist",
    "from_edge_list",
    "generate",
    "is_isolate_free",
    "Graph6Error",
    "emit_graph6",
    "parse_graph6",
    "connected_graphs",
    "KINDS",
    "InvariantResult",
    "IsolateError",
    "OracleLimitError",
    "enumerate_min_semitotal_sets",
    "is_dominating",
    "is_semitotal_dominating",
    "is_total_dominating",
    "is_two_packing",
    "lexleast_min_semitotal_set",
    "solve",
    "solve_bnb",
    "solve_oracle",
    "AlliedPartition",
    "CellPartition",
    "CellProfile",
    "ColumnReport",
    "ConnectorResult",
    "CountingChecks",
    "CoverIndex",
    "FalsificationError",
    "allied_split",
    "build_cell_partition",
    "build_column_witness",
    "build_connector_set",
    "build_cover_index",
    "cell_partition_violations",
    "check_column_bounds",
    "counting_checks",
    "max_allied_set",
    "project_profiles",
    "HuntReport",
    "InstanceRecord",
    "ScanOptions",
    "ScanSummary",
    "hunt_conjecture",
    "hunt_from_records",
    "scan",
    "summarize",
    "verify_pair",
]
