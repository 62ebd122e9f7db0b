"""Exact algorithms for partitioning a graph into three dominating sets."""

from .graph import (
    Graph,
    GraphFormatError,
    closed_neighborhood,
    connected_components,
    generate,
    is_dominating_set,
    parse_graph,
    verify_three_partition,
    write_graph,
)
from .solvers import (
    SearchStats,
    SolveOutcome,
    Verdict,
    domatic_number_dp,
    precheck,
    solve_auto,
    solve_bounded_det,
    solve_bounded_rand,
    solve_branching,
    solve_brute_force,
    solve_max_deg2,
)
from .state import PartitionState

__version__ = "0.1.0"
