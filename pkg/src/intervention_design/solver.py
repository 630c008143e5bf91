"""Exact anytime branch and bound over candidate selections."""

from __future__ import annotations

import enum
import itertools
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable

import numpy as np

from . import bounds, construct
from .errors import OptimalityContractError
from .model import ConditionKind, CoverModel, Selection, is_feasible
from .simplex import minimize_covering

COST_TOL = 1e-9  # costs this close count as equal
PRUNE_TOL = 1e-12  # search slack, far below COST_TOL so reported optima are exact


class Status(enum.Enum):
    OPTIMAL = "optimal"
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"
    NO_CANDIDATES = "no_candidates"
    UNKNOWN = "unknown"  # limit hit before any incumbent was found


class Bounding(enum.Enum):
    COMBINATORIAL = "combinatorial"
    LP = "lp-relaxation"


class SecondaryObjective(enum.Enum):
    NONE = "none"
    MIN_TOTAL_SIZE = "total-size"
    MIN_MAX_SIZE = "max-size"

    @classmethod
    def parse(cls, text: str | SecondaryObjective) -> SecondaryObjective:
        if isinstance(text, SecondaryObjective):
            return text
        aliases = {"average": "total-size", "avg": "total-size", "total": "total-size", "max": "max-size"}
        key = text.strip().lower()
        return cls(aliases.get(key, key))


@dataclass(frozen=True)
class IncumbentRecord:
    elapsed: float
    objective: float | int
    bound: float | int
    selection: Selection

    def as_dict(self) -> dict:
        return {
            "elapsed": round(self.elapsed, 6),
            "objective": self.objective,
            "bound": self.bound,
            "selection": list(self.selection.indices),
        }


@dataclass(frozen=True)
class SolveParams:
    time_limit: float | None = None
    node_limit: int | None = None
    bounding: Bounding = Bounding.COMBINATORIAL
    on_incumbent: Callable[[IncumbentRecord], None] | None = None
    heuristics: bool = True
    workers: int = 1

    def __post_init__(self) -> None:
        if self.time_limit is not None and self.time_limit < 0:
            raise ValueError("time_limit must be nonnegative")
        if self.node_limit is not None and self.node_limit < 0:
            raise ValueError("node_limit must be nonnegative")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


@dataclass
class SolveOutcome:
    status: Status
    selection: Selection | None
    objective: float | int | None
    bound: float | int
    nodes: int
    wall_time: float
    incumbents: list[IncumbentRecord] = field(default_factory=list)
    secondary_value: int | None = None

    @property
    def gap(self) -> float | None:
        if self.objective is None:
            return None
        if self.objective == 0:
            return 0.0 if self.bound >= 0 else None
        return (self.objective - self.bound) / abs(self.objective)


def _num(model: CoverModel, value: float) -> float | int:
    return int(round(value)) if model.integral_costs else float(value)


@dataclass
class _Node:
    chosen: tuple[int, ...]
    excluded: np.ndarray  # bool per candidate, includes known-useless ones
    covered: np.ndarray  # bool per row
    bound: float  # parent's bound, valid for this subtree


@dataclass
class _Eval:
    satisfied: bool
    infeasible: bool
    bound: float
    branch: int
    useless: np.ndarray | None


class _Core:
    """Shared node evaluation: coverage bookkeeping and lower bounds."""

    def __init__(self, model: CoverModel, bounding: Bounding = Bounding.COMBINATORIAL) -> None:
        self.model = model
        self.A = model.matrix
        self.group = model.row_group
        self.need = np.asarray(model.need, dtype=np.int64)
        self.costs = np.asarray(model.costs, dtype=float)
        self.sizes = np.asarray(model.pool.sizes, dtype=np.int64)
        self.masks = [s.mask for s in model.pool]
        self.n = model.n
        self.K = len(model.pool)
        self.P = len(model.pairs)
        self.kind = model.kind
        self.integral = model.integral_costs
        self.structured = model.structured
        self.bounding = bounding

    def root(self) -> _Node:
        return _Node((), np.zeros(self.K, dtype=bool), np.zeros(len(self.A), dtype=bool), -math.inf)

    def cost(self, chosen: Iterable[int]) -> float:
        return float(sum(self.costs[k] for k in chosen))

    def shortfall(self, covered: np.ndarray) -> np.ndarray:
        got = np.bincount(self.group[covered], minlength=self.P) if self.P else np.zeros(0, dtype=np.int64)
        return np.maximum(self.need - got, 0)

    def gains(self, covered: np.ndarray, short: np.ndarray, blocked: np.ndarray) -> np.ndarray:
        active = ~covered & (short[self.group] > 0)
        g = self.A[active].sum(axis=0) if active.any() else np.zeros(self.K, dtype=np.int64)
        g = np.asarray(g, dtype=np.int64)
        g[blocked] = 0
        return g

    def completable(self, covered: np.ndarray, usable: np.ndarray) -> bool:
        reach = covered | self.A[:, usable].any(axis=1) if usable.any() else covered
        got = np.bincount(self.group[reach], minlength=self.P)
        return bool(np.all(got >= self.need))

    def more_needed(self, chosen: tuple[int, ...], short_units: int, g: np.ndarray, usable: np.ndarray) -> int | None:
        """Lower bound on the number of further candidates, None if impossible."""
        count = int(usable.sum())
        comb_bound = -(-short_units // int(g.max()))
        need = comb_bound
        if self.structured and self.kind is not ConditionKind.CC:
            limit = int(self.sizes[usable].max())
            groups = bounds.word_groups(self.n, [self.masks[k] for k in chosen], self.kind)
            cols = bounds.columns_needed(self.kind, groups, limit, count)
            if cols is None:
                return None
            need = max(need, cols)
        return need if need <= count else None

    def cheapest(self, usable: np.ndarray, r: int) -> float:
        if r <= 0:
            return 0.0
        c = self.costs[usable]
        if r >= c.size:
            return float(c.sum())
        return float(np.partition(c, r - 1)[:r].sum())

    def finish_bound(self, value: float) -> float:
        return math.ceil(value - 1e-9) if self.integral else value

    def evaluate(self, node: _Node) -> _Eval:
        short = self.shortfall(node.covered)
        units = int(short.sum())
        if units == 0:
            base = self.cost(node.chosen)
            return _Eval(True, False, base, -1, None)
        blocked = node.excluded.copy()
        blocked[list(node.chosen)] = True
        g = self.gains(node.covered, short, blocked)
        usable = g > 0
        useless = ~usable & ~blocked
        if not usable.any() or not self.completable(node.covered, usable):
            return _Eval(False, True, math.inf, -1, None)
        r = self.more_needed(node.chosen, units, g, usable)
        if r is None:
            return _Eval(False, True, math.inf, -1, None)
        base = self.cost(node.chosen)
        bound = base + self.cheapest(usable, r)
        if self.bounding is Bounding.LP:
            lp = lp_bound(self.model, ones=node.chosen, zeros=np.flatnonzero(node.excluded | useless))
            if math.isinf(lp):
                return _Eval(False, True, math.inf, -1, None)
            bound = max(bound, lp)
        return _Eval(False, False, self.finish_bound(bound), int(np.argmax(g)), useless)

    def children(self, node: _Node, ev: _Eval) -> tuple[_Node, _Node]:
        k = ev.branch
        excl = node.excluded | ev.useless
        out_excl = excl.copy()
        out_excl[k] = True
        include = _Node(node.chosen + (k,), excl, node.covered | self.A[:, k], ev.bound)
        exclude = _Node(node.chosen, out_excl, node.covered, ev.bound)
        return include, exclude


def greedy_selection(model: CoverModel) -> Selection | None:
    """Candidate with the best new-units-per-cost ratio until all pairs are met."""
    core = _Core(model)
    covered = np.zeros(len(core.A), dtype=bool)
    chosen: list[int] = []
    blocked = np.zeros(core.K, dtype=bool)
    while True:
        short = core.shortfall(covered)
        if short.sum() == 0:
            return Selection(chosen)
        g = core.gains(covered, short, blocked)
        if g.max() <= 0:
            return None
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            ratio = np.where(core.costs > 0, g / np.where(core.costs > 0, core.costs, 1.0), np.inf)
        ratio[g <= 0] = -np.inf
        k = int(np.argmax(ratio))
        chosen.append(k)
        blocked[k] = True
        covered |= core.A[:, k]


def constructed_selection(model: CoverModel, bits: int, deadline: float | None = None) -> Selection | None:
    """Word-space construction with ``bits`` experiments, mapped onto the pool."""
    pool = model.pool
    if not (pool.complete and model.structured) or model.kind is ConditionKind.CC:
        return None
    limit = pool.spec.size_limit
    words = construct.construct_words(model.kind, model.n, bits, limit, deadline=deadline)
    if words is None:
        return None
    chosen = set()
    for col in construct.words_to_columns(words, bits):
        members = [v for v in range(model.n) if (col >> v) & 1]
        if not members and not pool.has_null:
            continue
        chosen.add(pool.index_of(members))
    sel = Selection(chosen)
    return sel if is_feasible(model, sel).feasible else None


def _subtree_search(core: _Core, start: list[_Node], incumbent: float, inc_sel: Selection | None,
                    deadline: float | None, node_limit: int | None, emit, nodes0: int = 0):
    """Depth-first search from ``start`` (processed in list order).

    Returns (incumbent value, selection, nodes, open-node bounds, exhausted).
    """
    stack = list(reversed(start))
    nodes = nodes0
    tol = 0.0 if core.integral else PRUNE_TOL
    while stack:
        if (node_limit is not None and nodes >= node_limit) or (
            deadline is not None and time.monotonic() > deadline
        ):
            return incumbent, inc_sel, nodes, [n.bound for n in stack], False
        node = stack.pop()
        if node.bound >= incumbent - tol:
            continue
        ev = core.evaluate(node)
        nodes += 1
        if ev.infeasible:
            continue
        if ev.satisfied:
            if ev.bound < incumbent - tol:
                incumbent, inc_sel = ev.bound, Selection(node.chosen)
                if emit is not None:
                    emit(incumbent, inc_sel, [n.bound for n in stack])
            continue
        if ev.bound >= incumbent - tol:
            continue
        inc, exc = core.children(node, ev)
        stack.append(exc)
        stack.append(inc)
    return incumbent, inc_sel, nodes, [], True


def _worker(model: CoverModel, bounding: Bounding, node: _Node, incumbent: float, deadline: float | None):
    core = _Core(model, bounding)
    value, sel, nodes, open_bounds, done = _subtree_search(core, [node], incumbent, None, deadline, None, None)
    return value, sel, nodes, open_bounds, done


def _frontier(core: _Core, root: _Node, incumbent: float, width: int) -> tuple[list[tuple[_Node, _Eval | None]], int]:
    """Expand the root in DFS order until ``width`` subtrees exist."""
    items: list[_Node] = [root]
    nodes = 0
    tol = 0.0 if core.integral else PRUNE_TOL
    while len(items) < width:
        for pos, node in enumerate(items):
            ev = core.evaluate(node)
            nodes += 1
            if ev.infeasible or ev.satisfied or ev.bound >= incumbent - tol:
                continue
            items[pos : pos + 1] = list(core.children(node, ev))
            break
        else:
            break
    return [(node, None) for node in items], nodes


def solve(model: CoverModel, params: SolveParams | None = None) -> SolveOutcome:
    params = params or SolveParams()
    start = time.monotonic()
    deadline = start + params.time_limit if params.time_limit is not None else None
    core = _Core(model, params.bounding)
    records: list[IncumbentRecord] = []

    def finish(status, sel, obj, bound, nodes):
        return SolveOutcome(status, sel, None if obj is None else _num(model, obj),
                            _num(model, bound) if not math.isinf(bound) else bound,
                            nodes, time.monotonic() - start, records)

    root = core.root()
    if core.P == 0 or int(core.shortfall(root.covered).sum()) == 0:
        return finish(Status.OPTIMAL, Selection(), 0.0, 0.0, 0)
    if core.K == 0:
        return finish(Status.NO_CANDIDATES, None, None, math.inf, 0)
    ev = core.evaluate(root)
    if ev.infeasible:
        return finish(Status.INFEASIBLE, None, None, math.inf, 1)
    root_bound = ev.bound
    best_bound = root_bound

    incumbent, inc_sel = math.inf, None

    def emit(value, sel, open_bounds):
        nonlocal best_bound
        if open_bounds:
            best_bound = max(best_bound, min(min(open_bounds), value))
        rec = IncumbentRecord(time.monotonic() - start, _num(model, value), _num(model, min(best_bound, value)), sel)
        records.append(rec)
        if params.on_incumbent is not None:
            params.on_incumbent(rec)

    def offer(sel: Selection | None):
        nonlocal incumbent, inc_sel
        if sel is None:
            return
        value = core.cost(sel.chosen)
        if value < incumbent - PRUNE_TOL:
            incumbent, inc_sel = value, sel
            emit(value, sel, [])

    if params.heuristics:
        offer(greedy_selection(model))
        if model.pool.complete and model.structured and model.kind is not ConditionKind.CC:
            bits = bounds.columns_needed(model.kind, ((model.n, False),), model.pool.spec.size_limit, core.K) or 0
            top = len(inc_sel) if inc_sel is not None else core.K
            while bits < top and incumbent > root_bound + COST_TOL:
                offer(constructed_selection(model, bits, deadline))
                bits += 1

    tol = 0.0 if core.integral else PRUNE_TOL
    if inc_sel is not None and incumbent <= root_bound + tol:
        return finish(Status.OPTIMAL, inc_sel, incumbent, incumbent, 1)

    if params.workers > 1:
        items, extra = _frontier(core, root, incumbent, params.workers)
        heur_value, heur_sel = incumbent, inc_sel
        with ProcessPoolExecutor(max_workers=params.workers) as pool:
            futures = [pool.submit(_worker, model, params.bounding, node, heur_value, deadline) for node, _ in items]
            results = [f.result() for f in futures]
        nodes = 1 + extra
        open_bounds: list[float] = []
        exhausted = True
        for value, sel, n_nodes, ob, done in results:
            nodes += n_nodes
            open_bounds.extend(ob)
            exhausted &= done
            if sel is not None and value < incumbent - tol:
                incumbent, inc_sel = value, sel
        if inc_sel is not heur_sel:
            emit(incumbent, inc_sel, open_bounds)
    else:
        incumbent, inc_sel, nodes, open_bounds, exhausted = _subtree_search(
            core, [root], incumbent, inc_sel, deadline, params.node_limit, emit
        )

    if exhausted:
        if inc_sel is None:
            return finish(Status.INFEASIBLE, None, None, math.inf, nodes)
        return finish(Status.OPTIMAL, inc_sel, incumbent, incumbent, nodes)
    bound = min([incumbent] + open_bounds)
    if inc_sel is None:
        return finish(Status.UNKNOWN, None, None, max(bound, best_bound), nodes)
    bound = max(bound, best_bound)
    bound = min(bound, incumbent)
    return finish(Status.FEASIBLE, inc_sel, incumbent, bound, nodes)


def enumerate_optima(model: CoverModel, proven_optimum: float, limit: int | None = None) -> list[Selection]:
    """Every selection whose cost equals ``proven_optimum``, canonically ordered.

    Candidates are decided in index order (include before exclude), pruning
    subtrees whose lower bound exceeds the optimum.  Finding anything cheaper
    raises :class:`OptimalityContractError`.
    """
    core = _Core(model)
    K = core.K
    tol = COST_TOL  # absolute: costs within this of the optimum are optimal
    found: list[Selection] = []
    cheap = core.costs <= tol  # may join a selection without leaving the tolerance

    def record(chosen: tuple[int, ...], cost: float) -> None:
        if cost < proven_optimum - tol:
            raise OptimalityContractError(
                f"selection {list(chosen)} costs {cost:g} < claimed optimum {proven_optimum:g}"
            )
        if cost - proven_optimum <= tol:
            found.append(Selection(chosen))
            if limit is not None and len(found) > limit:
                raise OverflowError(f"more than {limit} optimal selections")

    def zero_extensions(chosen: tuple[int, ...], pos: int, cost: float) -> None:
        # supersets by (near) zero-cost candidates may keep the cost optimal
        for k in range(pos, K):
            if cheap[k]:
                ext = chosen + (k,)
                ext_cost = core.cost(ext)
                if ext_cost - proven_optimum <= tol:
                    record(ext, ext_cost)
                    zero_extensions(ext, k + 1, ext_cost)

    def rec(chosen: tuple[int, ...], covered: np.ndarray, pos: int) -> None:
        cost = core.cost(chosen)
        if cost > proven_optimum + tol:
            return
        short = core.shortfall(covered)
        if int(short.sum()) == 0:
            record(chosen, cost)
            zero_extensions(chosen, pos, cost)
            return
        if pos >= K:
            return
        excluded = np.zeros(K, dtype=bool)
        excluded[:pos] = True
        ev = core.evaluate(_Node(chosen, excluded, covered, -math.inf))
        if ev.infeasible or ev.bound > proven_optimum + tol:
            return
        useful = bool(core.A[:, pos][~covered & (short[core.group] > 0)].any())
        if useful or cheap[pos]:
            rec(chosen + (pos,), covered | core.A[:, pos], pos + 1)
        rec(chosen, covered, pos + 1)

    if core.P == 0:
        record((), 0.0)
        zero_extensions((), 0, 0.0)
    else:
        rec((), np.zeros(len(core.A), dtype=bool), 0)
    return sorted(found, key=lambda s: s.indices)


def size_configurations(model: CoverModel, optimum: float | None = None) -> set[tuple[int, ...]]:
    """Distinct sorted size multisets over all optimal selections."""
    if optimum is None:
        out = solve(model)
        if out.status is not Status.OPTIMAL:
            raise ValueError(f"model has no proven optimum (status {out.status.value})")
        optimum = out.objective
    if model.pool.complete and model.structured and model.unit_cost and model.kind is not ConditionKind.CC:
        return _configurations_by_words(model, int(optimum))
    return {sel.sizes(model.pool) for sel in enumerate_optima(model, optimum)}


def _configurations_by_words(model: CoverModel, optimum: int) -> set[tuple[int, ...]]:
    # Optimal columns are automatically distinct (a repeated one could be dropped),
    # so a size multiset is attainable iff some admissible word matrix has those
    # column sums.
    limit = model.pool.spec.size_limit
    low = 0 if model.pool.has_null else 1
    out = set()
    for sizes in itertools.combinations_with_replacement(range(low, limit + 1), optimum):
        if sizes.count(0) > 1:
            continue
        if construct.words_with_column_sums(model.kind, model.n, sizes) is not None:
            out.add(sizes)
    return out


def _secondary_value(model: CoverModel, secondary: SecondaryObjective, chosen: Iterable[int]) -> int:
    sizes = [len(model.pool[k]) for k in chosen]
    if secondary is SecondaryObjective.MIN_MAX_SIZE:
        return max(sizes, default=0)
    return sum(sizes)


def solve_lexicographic(model: CoverModel, secondary: SecondaryObjective | str, params: SolveParams | None = None) -> SolveOutcome:
    """Primary optimum first, then the best secondary value among primary optima."""
    secondary = SecondaryObjective.parse(secondary)
    params = params or SolveParams()
    first = solve(model, params)
    if secondary is SecondaryObjective.NONE or first.selection is None:
        if first.selection is not None:
            first.secondary_value = _secondary_value(model, SecondaryObjective.MIN_TOTAL_SIZE, first.selection)
        return first

    start = time.monotonic()
    remaining = None if params.time_limit is None else max(0.0, params.time_limit - first.wall_time)
    deadline = None if remaining is None else start + remaining
    core = _Core(model)
    budget = float(first.objective)
    tol = COST_TOL * max(1.0, abs(budget))
    best_sel = first.selection
    best = (core.cost(best_sel.chosen), _secondary_value(model, secondary, best_sel.chosen))
    stack = [core.root()]
    nodes = 0
    exhausted = True
    while stack:
        if deadline is not None and time.monotonic() > deadline:
            exhausted = False
            break
        node = stack.pop()
        ev = core.evaluate(node)
        nodes += 1
        if ev.infeasible or ev.bound > budget + tol:
            continue
        sec_now = _secondary_value(model, secondary, node.chosen)
        if ev.satisfied:
            cand = (ev.bound, sec_now)
            if cand[0] < best[0] - tol or (cand[0] <= best[0] + tol and cand[1] < best[1]):
                best, best_sel = cand, Selection(node.chosen)
            continue
        sec_bound = _secondary_bound(core, node, ev, secondary, sec_now, budget + tol)
        if sec_bound is None or (ev.bound >= best[0] - tol and sec_bound >= best[1]):
            continue
        inc, exc = core.children(node, ev)
        stack.append(exc)
        stack.append(inc)

    status = Status.OPTIMAL if exhausted and first.status is Status.OPTIMAL else Status.FEASIBLE
    return SolveOutcome(
        status,
        best_sel,
        _num(model, best[0]),
        first.bound,
        first.nodes + nodes,
        first.wall_time + time.monotonic() - start,
        first.incumbents,
        secondary_value=int(best[1]),
    )


def _secondary_bound(core: _Core, node: _Node, ev: _Eval, secondary: SecondaryObjective, now: int, budget: float) -> int | None:
    blocked = node.excluded | ev.useless
    blocked = blocked.copy()
    blocked[list(node.chosen)] = True
    usable = ~blocked
    if not usable.any():
        return None
    spare = budget - core.cost(node.chosen)
    costs = np.sort(core.costs[usable])
    max_cols = int(np.searchsorted(np.cumsum(costs), spare + COST_TOL, side="right"))
    if max_cols == 0:
        return None
    sizes = np.sort(core.sizes[usable])
    extra = 0
    if core.structured and core.kind is not ConditionKind.CC:
        groups = bounds.word_groups(core.n, [core.masks[k] for k in node.chosen], core.kind)
        w = bounds.weight_needed(core.kind, groups, int(sizes[-1]), max_cols)
        if w is None:
            return None
        extra = w
    if secondary is SecondaryObjective.MIN_MAX_SIZE:
        return max(now, int(sizes[0]), -(-extra // max_cols))
    return now + max(extra, int(sizes[0]))


def _lp_data(model: CoverModel, ones: Iterable[int], zeros: Iterable[int]):
    """Covering LP ``min c x`` with fixings substituted out."""
    K = len(model.pool)
    fixed_one = np.zeros(K, dtype=bool)
    fixed_one[list(ones)] = True
    free = np.ones(K, dtype=bool)
    free[list(zeros)] = False
    free &= ~fixed_one
    A = model.matrix
    covered = A[:, fixed_one].any(axis=1) if fixed_one.any() else np.zeros(len(A), dtype=bool)
    cols = np.flatnonzero(free)
    need = np.asarray(model.need)
    group = model.row_group
    sizes = np.bincount(group, minlength=len(model.pairs))
    exact = bool(np.all(sizes == need)) if len(model.pairs) else True
    base = float(model.costs[fixed_one].sum())
    c_x = model.costs[cols]
    if exact:
        rows = np.flatnonzero(~covered)
        G = A[np.ix_(rows, cols)].astype(float)
        h = np.ones(len(rows))
        return base, c_x, G, h, cols, 0
    # threshold groups: x-cover >= y_r, sum_g y_r >= need_g, y_r <= 1
    got = np.bincount(group[covered], minlength=len(model.pairs))
    short = np.maximum(need - got, 0)
    rows = np.flatnonzero(~covered & (short[group] > 0))
    R = len(rows)
    nv = len(cols) + R
    link = np.zeros((R, nv))
    link[:, : len(cols)] = A[np.ix_(rows, cols)]
    link[np.arange(R), len(cols) + np.arange(R)] = -1.0
    groups_open = np.flatnonzero(short > 0)
    grp = np.zeros((len(groups_open), nv))
    gpos = {g: t for t, g in enumerate(groups_open)}
    for t, r in enumerate(rows):
        grp[gpos[group[r]], len(cols) + t] = 1.0
    cap = np.zeros((R, nv))
    cap[np.arange(R), len(cols) + np.arange(R)] = -1.0
    G = np.vstack([link, grp, cap])
    h = np.concatenate([np.zeros(R), short[groups_open].astype(float), -np.ones(R)])
    c = np.concatenate([c_x, np.zeros(R)])
    return base, c, G, h, cols, R


def lp_solution(model: CoverModel, ones: Iterable[int] = (), zeros: Iterable[int] = ()) -> tuple[float, np.ndarray | None]:
    """Relaxation value and the fractional candidate vector (None if infeasible)."""
    base, c, G, h, cols, _ = _lp_data(model, ones, zeros)
    x = np.zeros(len(model.pool))
    x[list(ones)] = 1.0
    if G.shape[0] == 0:
        return base, x
    if G.shape[1] == 0:
        return (base, x) if np.all(h <= 0) else (math.inf, None)
    res = minimize_covering(c, G, h)
    if res.status != "optimal":
        return math.inf, None
    x[cols] = res.duals[: len(cols)]
    return base + res.value, x


def lp_bound(model: CoverModel, ones: Iterable[int] = (), zeros: Iterable[int] = ()) -> float:
    """Continuous relaxation value under the given fixings; inf when infeasible."""
    return lp_solution(model, ones, zeros)[0]
