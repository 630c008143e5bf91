"""Binary covering models for the pair conditions.

Every unordered pair {i, j} contributes a group of coverage rows.  A row is
covered when the selection contains a candidate whose treatment of the pair
(see :func:`classify`) falls in the row's class set.  A group is satisfied
when at least ``need`` of its rows are covered:

============== ======================== ====
kind           rows per pair            need
============== ======================== ====
CC             null                     1
UPC            forward or backward      1
OPC            forward, backward        2
Identifiability forward, backward, null 2
============== ======================== ====

The identifiability indicators f/b/u never become solver variables: a pair's
indicator is 1 exactly when its row is covered, so the threshold
``f + b + u >= 2`` is checked directly on row coverage.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .combinatorics import CandidatePool, Intervention, PairClass
from .errors import InvalidPairError, InvalidSelectionError, InvalidSpecError


class ConditionKind(enum.Enum):
    CC = "cc"
    UPC = "upc"
    OPC = "opc"
    IDENTIFIABILITY = "identifiability"

    @classmethod
    def parse(cls, text: str | ConditionKind) -> ConditionKind:
        if isinstance(text, ConditionKind):
            return text
        key = text.strip().lower()
        aliases = {"id": "identifiability", "ident": "identifiability"}
        try:
            return cls(aliases.get(key, key))
        except ValueError:
            names = ", ".join(k.value for k in cls)
            raise InvalidSpecError(f"unknown condition kind {text!r} (expected one of {names})") from None


_ROW_CLASSES: dict[ConditionKind, tuple[frozenset[PairClass], ...]] = {
    ConditionKind.CC: (frozenset({PairClass.NULL}),),
    ConditionKind.UPC: (frozenset({PairClass.FORWARD, PairClass.BACKWARD}),),
    ConditionKind.OPC: (frozenset({PairClass.FORWARD}), frozenset({PairClass.BACKWARD})),
    ConditionKind.IDENTIFIABILITY: (
        frozenset({PairClass.FORWARD}),
        frozenset({PairClass.BACKWARD}),
        frozenset({PairClass.NULL}),
    ),
}
_NEED = {
    ConditionKind.CC: 1,
    ConditionKind.UPC: 1,
    ConditionKind.OPC: 2,
    ConditionKind.IDENTIFIABILITY: 2,
}
# integer codes used in the class matrix
_CLASS_CODE = {PairClass.NULL: 0, PairClass.FORWARD: 1, PairClass.BACKWARD: 2, PairClass.BOTH_IN: 3}
_CODE_CLASS = {v: k for k, v in _CLASS_CODE.items()}
_CLASS_ORDER = (PairClass.FORWARD, PairClass.BACKWARD, PairClass.NULL, PairClass.BOTH_IN)


@dataclass(frozen=True)
class CoverRow:
    pair: tuple[int, int]
    classes: frozenset[PairClass]
    cover: tuple[int, ...]

    @property
    def tag(self) -> str:
        return "|".join(c.value for c in _CLASS_ORDER if c in self.classes)


@dataclass(frozen=True)
class Selection:
    """Chosen candidate indices; candidate k is selected iff k is in ``chosen``."""

    chosen: frozenset[int] = field(default_factory=frozenset)

    def __init__(self, chosen: Iterable[int] = ()) -> None:
        object.__setattr__(self, "chosen", frozenset(int(k) for k in chosen))

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(sorted(self.chosen))

    def __len__(self) -> int:
        return len(self.chosen)

    def __iter__(self):
        return iter(self.indices)

    def sets(self, pool: CandidatePool) -> list[Intervention]:
        return [pool[k] for k in self.indices]

    def sizes(self, pool: CandidatePool) -> tuple[int, ...]:
        return tuple(sorted(len(pool[k]) for k in self.chosen))


def unit_costs(pool: CandidatePool) -> np.ndarray:
    return np.ones(len(pool))


def null_free_costs(pool: CandidatePool) -> np.ndarray:
    """Cost 0 for passive observation, 1 for every real intervention."""
    return np.array([0.0 if len(s) == 0 else 1.0 for s in pool])


def costs_from_map(pool: CandidatePool, mapping: Mapping[Intervention, float], default: float = 1.0) -> np.ndarray:
    out = np.full(len(pool), float(default))
    for s, c in mapping.items():
        out[pool.index_of(s)] = float(c)
    return out


@dataclass(frozen=True, eq=False)
class CoverModel:
    pool: CandidatePool
    kind: ConditionKind
    rows: tuple[CoverRow, ...]
    pairs: tuple[tuple[int, int], ...]
    registry: Mapping[tuple[int, int], tuple[int, ...]]
    need: tuple[int, ...]  # per pair, aligned with ``pairs``
    costs: np.ndarray
    structured: bool = True  # rows are exactly the classify() rows of ``kind``
    # dense views used by the search code
    matrix: np.ndarray = field(repr=False, default=None)  # rows x candidates, bool
    row_group: np.ndarray = field(repr=False, default=None)
    class_matrix: np.ndarray = field(repr=False, default=None)  # candidates x pairs

    @property
    def n(self) -> int:
        return self.pool.spec.n

    @property
    def n_threshold_rows(self) -> int:
        return len(self.pairs) if self.kind is ConditionKind.IDENTIFIABILITY else 0

    @property
    def total_units(self) -> int:
        return int(sum(self.need))

    @property
    def integral_costs(self) -> bool:
        return bool(np.all(np.equal(np.mod(self.costs, 1.0), 0.0)))

    @property
    def unit_cost(self) -> bool:
        return bool(np.all(self.costs == 1.0))

    def aux(self, pair: tuple[int, int]) -> dict[str, int] | None:
        """Row indices standing for f_ij, b_ij, u_ij (identifiability only)."""
        if self.kind is not ConditionKind.IDENTIFIABILITY:
            return None
        f, b, u = self.registry[pair]
        return {"f": f, "b": b, "u": u}


def _check_costs(pool: CandidatePool, costs: Sequence[float] | np.ndarray | None) -> np.ndarray:
    if costs is None:
        return unit_costs(pool)
    arr = np.asarray(costs, dtype=float)
    if arr.shape != (len(pool),):
        raise InvalidSpecError(f"cost vector has length {arr.size}, pool has {len(pool)} candidates")
    if np.any(arr < 0) or not np.all(np.isfinite(arr)):
        raise InvalidSpecError("costs must be finite and nonnegative")
    arr = arr.copy()
    arr.setflags(write=False)
    return arr


def class_matrix(pool: CandidatePool) -> np.ndarray:
    """``out[k, p]`` is the integer class code of candidate k on pair p."""
    n = pool.spec.n
    member = np.zeros((len(pool), n), dtype=np.int8)
    for k, s in enumerate(pool):
        for v in s.members:
            member[k, v] = 1
    ii, jj = np.triu_indices(n, k=1)
    return (member[:, ii] + 2 * member[:, jj]).astype(np.int8)


def build(pool: CandidatePool, kind: ConditionKind | str, costs: Sequence[float] | np.ndarray | None = None) -> CoverModel:
    kind = ConditionKind.parse(kind)
    cost_vec = _check_costs(pool, costs)
    n = pool.spec.n
    pairs = tuple((i, j) for i in range(n) for j in range(i + 1, n))
    cm = class_matrix(pool) if pairs else np.zeros((len(pool), 0), dtype=np.int8)

    rows: list[CoverRow] = []
    registry: dict[tuple[int, int], tuple[int, ...]] = {}
    masks: list[np.ndarray] = []
    groups: list[int] = []
    for p, pair in enumerate(pairs):
        ids = []
        for classes in _ROW_CLASSES[kind]:
            codes = [_CLASS_CODE[c] for c in classes]
            hit = np.isin(cm[:, p], codes)
            ids.append(len(rows))
            rows.append(CoverRow(pair, classes, tuple(int(k) for k in np.flatnonzero(hit))))
            masks.append(hit)
            groups.append(p)
        registry[pair] = tuple(ids)

    matrix = np.array(masks, dtype=bool).reshape(len(rows), len(pool))
    need = tuple(_NEED[kind] for _ in pairs)
    for arr in (matrix, cm):
        arr.setflags(write=False)
    return CoverModel(
        pool=pool,
        kind=kind,
        rows=tuple(rows),
        pairs=pairs,
        registry=registry,
        need=need,
        costs=cost_vec,
        matrix=matrix,
        row_group=np.array(groups, dtype=np.int64),
        class_matrix=cm,
    )


@dataclass(frozen=True)
class PairStatus:
    pair: tuple[int, int]
    covered: frozenset[str]  # tags of covered rows
    missing: frozenset[str]
    satisfied: bool


@dataclass(frozen=True)
class FeasibilityReport:
    feasible: bool
    pairs: tuple[PairStatus, ...]

    @property
    def violated(self) -> list[tuple[int, int]]:
        return [ps.pair for ps in self.pairs if not ps.satisfied]


def _validate(model: CoverModel, sel: Selection) -> None:
    bad = [k for k in sel.chosen if k < 0 or k >= len(model.pool)]
    if bad:
        raise InvalidSelectionError(f"candidate indices {sorted(bad)} out of range 0..{len(model.pool) - 1}")


def is_feasible(model: CoverModel, sel: Selection) -> FeasibilityReport:
    _validate(model, sel)
    chosen = np.zeros(len(model.pool), dtype=bool)
    chosen[list(sel.chosen)] = True
    covered = model.matrix[:, chosen].any(axis=1) if model.rows else np.zeros(0, dtype=bool)
    statuses = []
    for p, pair in enumerate(model.pairs):
        ids = model.registry[pair]
        got = frozenset(model.rows[r].tag for r in ids if covered[r])
        miss = frozenset(model.rows[r].tag for r in ids if not covered[r])
        statuses.append(PairStatus(pair, got, miss, len(got) >= model.need[p]))
    return FeasibilityReport(all(s.satisfied for s in statuses), tuple(statuses))


def objective_value(model: CoverModel, sel: Selection) -> float | int:
    _validate(model, sel)
    total = float(sum(model.costs[k] for k in sel.chosen))
    return int(round(total)) if model.integral_costs else total


def export_text(model: CoverModel) -> str:
    """Plain-text normalized form; see README "Model export format"."""
    lines = [
        "# intervention-design cover model v1",
        f"kind {model.kind.value}",
        f"variables {model.n}",
        f"candidates {len(model.pool)}",
    ]
    for k, s in enumerate(model.pool):
        members = " ".join(str(v) for v in s) or "-"
        lines.append(f"cand {k} cost {model.costs[k]:g} set {members}")
    lines.append(f"rows {len(model.rows)}")
    for r, row in enumerate(model.rows):
        cover = " ".join(str(k) for k in row.cover) or "-"
        lines.append(f"row {r} pair {row.pair[0]} {row.pair[1]} class {row.tag} cover {cover}")
    lines.append(f"groups {len(model.pairs)}")
    for p, pair in enumerate(model.pairs):
        ids = " ".join(str(r) for r in model.registry[pair])
        lines.append(f"group {pair[0]} {pair[1]} rows {ids} need {model.need[p]}")
    return "\n".join(lines) + "\n"


def filter_pairs(model: CoverModel, keep: Iterable[tuple[int, int]]) -> CoverModel:
    """Restrict the model to some pairs, e.g. when part of the graph is known.

    The result is no longer the full structured model, so the solver falls
    back to its generic bounds.
    """
    wanted = {tuple(sorted(p)) for p in keep}
    unknown = wanted - set(model.pairs)
    if unknown:
        raise InvalidPairError(f"pairs {sorted(unknown)} are not in the model")
    rows: list[CoverRow] = []
    registry: dict[tuple[int, int], tuple[int, ...]] = {}
    pairs, need, old_rows, groups, cols = [], [], [], [], []
    for p, pair in enumerate(model.pairs):
        if pair not in wanted:
            continue
        ids = []
        for r in model.registry[pair]:
            ids.append(len(rows))
            rows.append(model.rows[r])
            old_rows.append(r)
            groups.append(len(pairs))
        registry[pair] = tuple(ids)
        pairs.append(pair)
        need.append(model.need[p])
        cols.append(p)
    matrix = model.matrix[old_rows].reshape(len(rows), len(model.pool)).copy()
    cm = model.class_matrix[:, cols].copy()
    for arr in (matrix, cm):
        arr.setflags(write=False)
    return CoverModel(
        pool=model.pool,
        kind=model.kind,
        rows=tuple(rows),
        pairs=tuple(pairs),
        registry=registry,
        need=tuple(need),
        costs=model.costs,
        structured=False,
        matrix=matrix,
        row_group=np.array(groups, dtype=np.int64),
        class_matrix=cm,
    )
