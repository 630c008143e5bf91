"""Minimal interventional experiment design for causal identifiability."""

from __future__ import annotations

from .approx import ApproxResult, greedy, lp_round
from .causal import Dag, Pdag, d_separated, enumerate_dags, infer, manipulate, run_experiment, uniquely_identifies
from .combinatorics import (
    CandidatePool,
    Intervention,
    PairClass,
    ProblemSpec,
    classify,
    generate_candidates,
    lower_bound,
)
from .model import ConditionKind, CoverModel, Selection, build, is_feasible, objective_value
from .solver import (
    Bounding,
    SecondaryObjective,
    SolveOutcome,
    SolveParams,
    Status,
    enumerate_optima,
    lp_bound,
    size_configurations,
    solve,
    solve_lexicographic,
)

__all__ = [
    "ApproxResult", "Bounding", "CandidatePool", "ConditionKind", "CoverModel", "Dag", "Intervention",
    "PairClass", "Pdag", "ProblemSpec", "SecondaryObjective", "Selection", "SolveOutcome", "SolveParams",
    "Status", "build", "classify", "d_separated", "enumerate_dags", "enumerate_optima", "generate_candidates",
    "greedy", "infer", "is_feasible", "lower_bound", "lp_bound", "lp_round", "manipulate", "objective_value",
    "run_experiment", "size_configurations", "solve", "solve_lexicographic", "uniquely_identifies",
]
