"""Deadline-constrained max-NPV project scheduling: solvers, oracle,
instance generator, and benchmark statistics."""

from .model import (
    Activity,
    DeadlineInfeasibleError,
    InstanceError,
    ProjectNetwork,
    Schedule,
    SpanningTree,
    chain_network,
    critical_path_length,
    early_schedule,
    is_feasible,
    late_schedule,
    npv,
    validate_network,
)
from .algorithms import (
    ALGORITHMS,
    BACKWARD,
    FORWARD,
    RunMetrics,
    SolverError,
    SolverResult,
    UnboundedShiftError,
    choose_direction,
    compute_v,
    hs_solve,
    rsfb_solve,
    saafb_solve,
    solve,
)
from .oracle import OracleBudgetError, brute_force_optimal
from .generator import (
    FactorAssignment,
    assign_cash_flows,
    generate_instance,
    generate_network,
    instance_rng,
    sample_factors,
)
from .bench import (
    ExperimentRecord,
    KsResult,
    MaxCostSeries,
    ks_two_sample,
    max_cost_series,
    read_csv,
    run_batch,
    spearman,
    summarize,
    write_csv,
)

__version__ = "0.1.0"

__all__ = [
    "Activity",
    "ProjectNetwork",
    "Schedule",
    "SpanningTree",
    "InstanceError",
    "DeadlineInfeasibleError",
    "chain_network",
    "validate_network",
    "is_feasible",
    "npv",
    "early_schedule",
    "late_schedule",
    "critical_path_length",
    "FORWARD",
    "BACKWARD",
    "ALGORITHMS",
    "RunMetrics",
    "SolverResult",
    "SolverError",
    "UnboundedShiftError",
    "choose_direction",
    "compute_v",
    "rsfb_solve",
    "saafb_solve",
    "hs_solve",
    "solve",
    "brute_force_optimal",
    "OracleBudgetError",
    "FactorAssignment",
    "sample_factors",
    "assign_cash_flows",
    "generate_network",
    "generate_instance",
    "instance_rng",
    "ExperimentRecord",
    "KsResult",
    "MaxCostSeries",
    "run_batch",
    "read_csv",
    "write_csv",
    "summarize",
    "ks_two_sample",
    "spearman",
    "max_cost_series",
]
