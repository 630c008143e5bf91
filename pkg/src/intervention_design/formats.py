"""Text formats: run configs (TOML), DAG files and selection files.

DAG file::

    nodes 4
    0 1
    1 2

Selection file (one intervention per line, ``-`` for the null experiment)::

    nodes 4
    -
    0 1
    0 2

Blank lines and ``#`` comments are ignored in both.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, fields, replace
from typing import Iterable, Mapping

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

import numpy as np

from .causal import Dag
from .combinatorics import CandidatePool, Intervention, ProblemSpec, generate_candidates
from .errors import ConfigError, CycleError
from .model import ConditionKind, CoverModel, Selection, build, costs_from_map, null_free_costs
from .solver import Bounding, SecondaryObjective

FORMATS = ("human", "csv", "markdown", "dot", "records")


@dataclass(frozen=True)
class RunConfig:
    n: int
    k_max: int
    kind: ConditionKind = ConditionKind.IDENTIFIABILITY
    costs: str | Mapping[str, float] = "uniform"
    cap_to_half: bool = True
    include_null: bool = True
    secondary: SecondaryObjective = SecondaryObjective.NONE
    enumerate_all: bool = False
    time_limit: float | None = None
    node_limit: int | None = None
    bounding: Bounding = Bounding.COMBINATORIAL
    workers: int = 1
    format: str = "human"

    def spec(self) -> ProblemSpec:
        return ProblemSpec(self.n, self.k_max, self.cap_to_half, self.include_null)

    def pool(self) -> CandidatePool:
        return generate_candidates(self.spec())

    def model(self) -> CoverModel:
        pool = self.pool()
        return build(pool, self.kind, resolve_costs(pool, self.costs))


def parse_set(text: str) -> Intervention:
    """``"-"``, ``"{}"``, ``"{0,1}"``, ``"0,1"`` or ``"0 1"``."""
    body = text.strip().strip("{}").strip()
    if body in ("", "-"):
        return Intervention()
    try:
        return Intervention(int(tok) for tok in re.split(r"[,\s]+", body) if tok)
    except ValueError:
        raise ValueError(f"cannot read {text!r} as a variable set") from None


def resolve_costs(pool: CandidatePool, costs: str | Mapping[str, float]) -> np.ndarray | None:
    if isinstance(costs, str):
        if costs == "uniform":
            return None
        if costs == "null-free":
            return null_free_costs(pool)
        raise ValueError(f"unknown cost preset {costs!r}")
    table = dict(costs)
    default = float(table.pop("default", 1.0))
    mapping = {parse_set(key): float(v) for key, v in table.items()}
    for s in mapping:
        if s not in pool._index:
            raise ValueError(f"cost given for {s}, which is not a candidate")
    return costs_from_map(pool, mapping, default)


_KEYS = {f.name for f in fields(RunConfig)}
_REQUIRED = ("n", "k_max")


def _key_line(text: str, key: str) -> int | None:
    pat = re.compile(rf"^\s*(\"?){re.escape(key)}\1\s*=|^\s*\[\s*{re.escape(key)}\s*\]")
    for no, line in enumerate(text.splitlines(), start=1):
        if pat.match(line):
            return no
    return None


def _coerce(key: str, value, line: int | None):
    def bad(msg: str):
        return ConfigError(f"{key}: {msg}", line)

    try:
        if key in ("n", "k_max", "workers"):
            if isinstance(value, bool) or not isinstance(value, int):
                raise bad("expected an integer")
            return value
        if key == "node_limit":
            if isinstance(value, bool) or not isinstance(value, int) or value < 0:
                raise bad("expected a nonnegative integer")
            return value
        if key in ("cap_to_half", "include_null", "enumerate_all"):
            if not isinstance(value, bool):
                raise bad("expected true or false")
            return value
        if key == "time_limit":
            if isinstance(value, bool) or not isinstance(value, (int, float)) or value < 0:
                raise bad("expected a nonnegative number of seconds")
            return float(value)
        if key == "kind":
            return ConditionKind.parse(str(value))
        if key == "secondary":
            return SecondaryObjective.parse(str(value))
        if key == "bounding":
            return Bounding({"lp": "lp-relaxation"}.get(str(value), str(value)))
        if key == "format":
            if value not in FORMATS:
                raise bad(f"expected one of {', '.join(FORMATS)}")
            return value
        if key == "costs":
            if isinstance(value, str):
                if value not in ("uniform", "null-free"):
                    raise bad('expected "uniform", "null-free" or a table')
                return value
            if isinstance(value, dict):
                out = {}
                for k, v in value.items():
                    if isinstance(v, bool) or not isinstance(v, (int, float)) or v < 0:
                        raise bad(f"cost of {k!r} must be a nonnegative number")
                    if k != "default":
                        parse_set(k)
                    out[k] = float(v)
                return out
            raise bad('expected "uniform", "null-free" or a table')
    except ConfigError:
        raise
    except ValueError as exc:
        raise bad(str(exc)) from None
    raise bad("unknown key")


def parse_config(text: str, overrides: Mapping[str, object] | None = None) -> RunConfig:
    """Read a TOML run config; ``overrides`` (e.g. from flags) win over the file."""
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        line = getattr(exc, "lineno", None)
        if line is None:
            m = re.search(r"line (\d+)", str(exc))
            line = int(m.group(1)) if m else None
        last = max(1, len(text.splitlines()))
        line = last if line is None else min(line, last)  # "end of document" points past the text
        raise ConfigError(f"malformed TOML: {exc}", line) from None
    values = {}
    for key, value in data.items():
        line = _key_line(text, key)
        if key not in _KEYS:
            raise ConfigError(f"unknown key {key!r}", line)
        values[key] = _coerce(key, value, line)
    for key, value in (overrides or {}).items():
        if value is None:
            continue
        values[key] = _coerce(key, value, None)
    missing = [k for k in _REQUIRED if k not in values]
    if missing:
        raise ConfigError(f"missing required key(s): {', '.join(missing)}")
    try:
        cfg = RunConfig(**values)
        cfg.spec()
        if not isinstance(cfg.costs, str):
            resolve_costs(cfg.pool(), cfg.costs)
    except ValueError as exc:
        raise ConfigError(str(exc), None) from None
    return cfg


def config_from_values(**values) -> RunConfig:
    return parse_config("", values)


def _content_lines(text: str) -> Iterable[tuple[int, str]]:
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def _header(lines: list[tuple[int, str]], what: str) -> int:
    if not lines:
        raise ConfigError(f"empty {what} file")
    no, first = lines[0]
    parts = first.split()
    if len(parts) != 2 or parts[0] != "nodes" or not parts[1].isdigit():
        raise ConfigError('expected header "nodes N"', no)
    return int(parts[1])


def parse_dag(text: str) -> Dag:
    lines = list(_content_lines(text))
    n = _header(lines, "DAG")
    edges = []
    for no, line in lines[1:]:
        parts = line.split()
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise ConfigError('expected "parent child"', no)
        a, b = int(parts[0]), int(parts[1])
        if a >= n or b >= n or a == b:
            raise ConfigError(f"edge {a} {b} is invalid for {n} nodes", no)
        edges.append((a, b))
    try:
        return Dag(n, edges)
    except CycleError as exc:
        raise ConfigError(str(exc)) from None


def format_dag(dag: Dag) -> str:
    return "".join([f"nodes {dag.n}\n"] + [f"{a} {b}\n" for a, b in sorted(dag.edges)])


def parse_selection_sets(text: str) -> tuple[int, list[Intervention]]:
    lines = list(_content_lines(text))
    n = _header(lines, "selection")
    sets = []
    for no, line in lines[1:]:
        if line == "-":
            sets.append(Intervention())
            continue
        parts = line.split()
        if not all(p.isdigit() for p in parts):
            raise ConfigError("expected space-separated variable indices or '-'", no)
        members = [int(p) for p in parts]
        if any(v >= n for v in members):
            raise ConfigError(f"variable out of range 0..{n - 1}", no)
        sets.append(Intervention(members))
    return n, sets


def format_selection(n: int, sets: Iterable[Intervention]) -> str:
    out = [f"nodes {n}\n"]
    for s in sets:
        out.append((" ".join(str(v) for v in s) or "-") + "\n")
    return "".join(out)


def selection_for_pool(pool: CandidatePool, sets: Iterable[Intervention]) -> Selection:
    idx = []
    for s in sets:
        try:
            idx.append(pool.index_of(s))
        except KeyError as exc:
            raise ConfigError(str(exc).strip("'\"")) from None
    return Selection(idx)


def with_overrides(cfg: RunConfig, **values) -> RunConfig:
    clean = {k: _coerce(k, v, None) for k, v in values.items() if v is not None}
    return replace(cfg, **clean)
