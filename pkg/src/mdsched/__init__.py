"""Minimum-dissatisfaction personnel scheduling: solvers, oracles, CLI."""

from .core import (
    Cost,
    Employee,
    InstanceP1,
    InstanceP2,
    ScheduleP1,
    ScheduleP2,
    dissatisfaction,
    total_cost_p1,
    total_cost_p2,
    validate_p1,
    validate_p2,
)
from .prefix import (
    PrefixTables,
    build_prefix,
    group_cost_at_left,
    group_cost_at_right,
)
from .segtree import (
    NEG_INF,
    SegTree,
    add_value,
    add_value_pos,
    max_poz,
    min_poz,
    plus_poz,
)
from .p1_solvers import (
    GreedyState,
    P1SolveStats,
    TraceStep,
    solve_p1_brute,
    solve_p1_dp_grid,
    solve_p1_greedy,
    solve_p1_greedy_fast,
)
from .p2_solvers import (
    DequeEntry,
    P2SolveStats,
    Rational,
    solve_p2_brute,
    solve_p2_dp_deque,
    solve_p2_dp_naive,
)
from .io_cli import (
    BenchRecord,
    GenParams,
    ParseError,
    SplitMix64,
    gen_instance,
    parse_instance,
    read_schedule,
    run_bench,
    run_cli,
    verify_schedule_text,
    write_instance,
    write_schedule,
)

__version__ = "0.1.0"

__all__ = [
    "BenchRecord",
    "Cost",
    "DequeEntry",
    "Employee",
    "GenParams",
    "GreedyState",
    "InstanceP1",
    "InstanceP2",
    "NEG_INF",
    "P1SolveStats",
    "P2SolveStats",
    "ParseError",
    "PrefixTables",
    "Rational",
    "ScheduleP1",
    "ScheduleP2",
    "SegTree",
    "SplitMix64",
    "TraceStep",
    "add_value",
    "add_value_pos",
    "build_prefix",
    "dissatisfaction",
    "gen_instance",
    "group_cost_at_left",
    "group_cost_at_right",
    "max_poz",
    "min_poz",
    "parse_instance",
    "plus_poz",
    "read_schedule",
    "run_bench",
    "run_cli",
    "solve_p1_brute",
    "solve_p1_dp_grid",
    "solve_p1_greedy",
    "solve_p1_greedy_fast",
    "solve_p2_brute",
    "solve_p2_dp_deque",
    "solve_p2_dp_naive",
    "total_cost_p1",
    "total_cost_p2",
    "validate_p1",
    "validate_p2",
    "verify_schedule_text",
    "write_instance",
    "write_schedule",
]
