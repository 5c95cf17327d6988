"""Numerical laboratory for coupled critical Schrödinger systems on a ball."""

from ._critlab import (
    AdmissibilityReport,
    EstimateReport,
    LevelOracle,
    ProblemParams,
    SolveConfig,
    SolveResult,
    check_admissible,
    check_names,
    expansion_report,
    lambda_bounds,
    limit_level,
    make_params,
    minimize_on_M,
    minimize_on_N,
    pmax,
    run_json,
    solve_single,
    sobolev_tilde,
    sobolev_tilde_power,
)

__all__ = [
    "AdmissibilityReport",
    "EstimateReport",
    "LevelOracle",
    "ProblemParams",
    "SolveConfig",
    "SolveResult",
    "check_admissible",
    "check_names",
    "expansion_report",
    "lambda_bounds",
    "limit_level",
    "make_params",
    "minimize_on_M",
    "minimize_on_N",
    "pmax",
    "run_json",
    "solve_single",
    "sobolev_tilde",
    "sobolev_tilde_power",
]
