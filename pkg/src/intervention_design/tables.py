"""Regeneration of the optimum and configuration tables."""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass

from .combinatorics import ProblemSpec, generate_candidates
from .errors import SizeLimitError
from .model import ConditionKind, build
from .solver import SecondaryObjective, SolveParams, Status, size_configurations, solve, solve_lexicographic

TABLE_KINDS = {
    "id": ConditionKind.IDENTIFIABILITY,
    "cc": ConditionKind.CC,
    "upc": ConditionKind.UPC,
    "opc": ConditionKind.OPC,
}
CONFIG_TABLES = ("config", "config2nd")
WHICH = tuple(TABLE_KINDS) + CONFIG_TABLES

DEFAULT_N = {"value": (2, 3, 4, 5, 8, 9, 16, 17), "config": (2, 3, 4, 5, 6)}
DEFAULT_K = {"value": (1, 2, 3, 4), "config": (1, 2, 3)}
MAX_N = {"value": 20, "config": 8}


@dataclass(frozen=True)
class Cell:
    n: int
    k: int
    applicable: bool
    status: Status | None = None
    value: int | None = None
    bound: int | None = None
    configs: tuple[tuple[int, ...], ...] = ()
    seconds: float = 0.0

    def text(self, times: bool) -> str:
        if not self.applicable:
            return "-"
        if self.configs:
            body = " ".join("(" + ",".join(map(str, c)) + ")" for c in self.configs)
        elif self.value is None:
            body = "?"
        else:
            body = str(self.value)
            if self.status is not Status.OPTIMAL:
                body += f"* [>={self.bound}]"
        return f"{body} ({self.seconds:.2f})" if times else body


def _group(which: str) -> str:
    return "config" if which in CONFIG_TABLES else "value"


def compute_table(which: str, ns=None, ks=None, time_limit: float | None = None) -> list[Cell]:
    if which not in WHICH:
        raise ValueError(f"unknown table {which!r}; choose from {', '.join(WHICH)}")
    group = _group(which)
    ns = tuple(ns) if ns else DEFAULT_N[group]
    ks = tuple(ks) if ks else DEFAULT_K[group]
    bad = [n for n in ns if n < 2 or n > MAX_N[group]]
    if bad:
        raise SizeLimitError(f"table {which} supports 2 <= N <= {MAX_N[group]}, got {bad}")
    if any(k < 0 for k in ks):
        raise SizeLimitError("k_max must be nonnegative")
    params = SolveParams(time_limit=time_limit)
    cells = []
    for n in ns:
        for k in ks:
            # values above the half cap repeat the capped cell, except in the
            # identifiability and configuration tables, which leave them blank
            if (which == "id" or group == "config") and k > n // 2:
                cells.append(Cell(n, k, False))
                continue
            start = time.perf_counter()
            kind = TABLE_KINDS.get(which, ConditionKind.IDENTIFIABILITY)
            model = build(generate_candidates(ProblemSpec(n, k)), kind)
            if which == "config":
                out = solve(model, params)
                configs = tuple(sorted(size_configurations(model, out.objective))) if out.status is Status.OPTIMAL else ()
            elif which == "config2nd":
                out = solve_lexicographic(model, SecondaryObjective.MIN_TOTAL_SIZE, params)
                configs = (out.selection.sizes(model.pool),) if out.selection is not None else ()
            else:
                out = solve(model, params)
                configs = ()
            cells.append(Cell(n, k, True, out.status, out.objective, out.bound, configs, time.perf_counter() - start))
    return cells


def render_csv(cells: list[Cell], times: bool = True) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    head = ["N", "k_max", "status", "value", "bound"] + (["seconds"] if times else [])
    w.writerow(head)
    for c in cells:
        if not c.applicable:
            row = [c.n, c.k, "n/a", "-", "-"]
        elif c.configs:
            row = [c.n, c.k, c.status.value, " ".join("(" + ",".join(map(str, x)) + ")" for x in c.configs), c.bound]
        else:
            row = [c.n, c.k, c.status.value, "" if c.value is None else c.value, c.bound]
        if times:
            row.append(f"{c.seconds:.3f}")
        w.writerow(row)
    return buf.getvalue()


def render_markdown(cells: list[Cell], times: bool = True) -> str:
    ns = sorted({c.n for c in cells})
    ks = sorted({c.k for c in cells})
    grid = {(c.n, c.k): c for c in cells}
    lines = ["| N \\ k_max | " + " | ".join(str(k) for k in ks) + " |", "|---" * (len(ks) + 1) + "|"]
    for n in ns:
        lines.append(f"| {n} | " + " | ".join(grid[(n, k)].text(times) for k in ks) + " |")
    return "\n".join(lines) + "\n"
