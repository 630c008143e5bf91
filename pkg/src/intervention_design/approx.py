"""Polynomial-time approximations: greedy multi-cover and LP rounding."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import CoverModel, FeasibilityReport, Selection, is_feasible, objective_value
from .solver import Status, greedy_selection, lp_solution


@dataclass(frozen=True)
class ApproxResult:
    status: Status
    selection: Selection | None
    objective: float | int | None
    factor: float  # worst-case guarantee, not the observed ratio
    certificate: FeasibilityReport | None
    lp_value: float | None = None


def harmonic(m: int) -> float:
    return float(sum(1.0 / i for i in range(1, m + 1)))


def _already_done(model: CoverModel) -> bool:
    return model.total_units == 0


def greedy(model: CoverModel) -> ApproxResult:
    """Repeatedly take the candidate with most newly met requirement units per cost.

    A requirement unit is one of the ``need`` rows of a pair; a candidate earns
    at most one unit per pair per step.  Ties go to the lowest candidate index.
    The result costs at most ``H_m`` times the optimum, ``m`` the total units.
    """
    factor = harmonic(model.total_units)
    if _already_done(model):
        sel = Selection()
        return ApproxResult(Status.OPTIMAL, sel, objective_value(model, sel), factor, is_feasible(model, sel))
    if len(model.pool) == 0:
        return ApproxResult(Status.NO_CANDIDATES, None, None, factor, None)
    sel = greedy_selection(model)
    if sel is None:
        return ApproxResult(Status.INFEASIBLE, None, None, factor, None)
    return ApproxResult(Status.FEASIBLE, sel, objective_value(model, sel), factor, is_feasible(model, sel))


def row_frequency(model: CoverModel) -> int:
    return max((len(r.cover) for r in model.rows), default=0)


def lp_round(model: CoverModel) -> ApproxResult:
    """Frequency rounding of the covering relaxation.

    With ``f`` the largest number of candidates covering one row, keeping every
    candidate whose fractional value reaches ``1/f`` covers all plain rows.  For
    threshold groups (two of three rows) at least two rows carry 1/2 of LP
    coverage, so the threshold drops to ``1/(2f)`` and the factor doubles.
    """
    f = row_frequency(model)
    threshold_groups = any(len(model.registry[p]) > model.need[i] for i, p in enumerate(model.pairs))
    factor = float(2 * f if threshold_groups else f)
    if _already_done(model):
        sel = Selection()
        return ApproxResult(Status.OPTIMAL, sel, objective_value(model, sel), factor, is_feasible(model, sel), 0.0)
    if len(model.pool) == 0:
        return ApproxResult(Status.NO_CANDIDATES, None, None, factor, None)
    value, x = lp_solution(model)
    if x is None:
        return ApproxResult(Status.INFEASIBLE, None, None, factor, None)
    cut = 1.0 / factor
    sel = Selection(np.flatnonzero(x >= cut - 1e-9))
    report = is_feasible(model, sel)
    if not report.feasible:
        raise RuntimeError("rounded selection is infeasible; relaxation solution is inaccurate")
    return ApproxResult(Status.FEASIBLE, sel, objective_value(model, sel), factor, report, value)
