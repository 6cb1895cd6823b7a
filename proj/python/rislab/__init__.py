"""Rate-independent systems driven by loads of bounded variation."""

from ._rislab import (
    Dissipation,
    DomainError,
    ParametrizedTuple,
    PiecewisePath,
    PreconditionError,
    RISProblem,
    SolverError,
    ce1_limit_load,
    ce1_load,
    ce2_load,
    check,
    construct_relaxed,
    counterexample1_tuple,
    counterexample2_tuple,
    dissipation,
    kurzweil_stieltjes,
    l1_distance,
    quadratic_problem,
    ramp_state,
    read_path_csv,
    scalar_benchmark_problem,
    solve_viscous,
    step_state,
    sup_distance,
    total_variation,
    write_path_csv,
)

__all__ = [
    "Dissipation",
    "DomainError",
    "ParametrizedTuple",
    "PiecewisePath",
    "PreconditionError",
    "RISProblem",
    "SolverError",
    "ce1_limit_load",
    "ce1_load",
    "ce2_load",
    "check",
    "construct_relaxed",
    "counterexample1_tuple",
    "counterexample2_tuple",
    "dissipation",
    "kurzweil_stieltjes",
    "l1_distance",
    "quadratic_problem",
    "ramp_state",
    "read_path_csv",
    "scalar_benchmark_problem",
    "solve_viscous",
    "step_state",
    "sup_distance",
    "total_variation",
    "write_path_csv",
]
