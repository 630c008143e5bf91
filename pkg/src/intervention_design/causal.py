"""Ground-truth causal semantics under an exact independence oracle.

Structural interventions cut every edge into a manipulated variable; the
oracle reports d-separation in the manipulated graph.  ``infer`` replays a
family of experiments the way an analyst would, and ``uniquely_identifies``
checks by exhaustion that no two DAGs look alike under the whole family.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .combinatorics import Intervention
from .errors import CycleError, InvalidQueryError, SizeLimitError

Edge = tuple[int, int]
CIFact = tuple[int, int, frozenset[int]]

MAX_ENUMERATE = 5
MAX_EXHAUSTIVE = 4


def _members(s: Intervention | Iterable[int]) -> frozenset[int]:
    return s.members if isinstance(s, Intervention) else frozenset(s)


@dataclass(frozen=True)
class Dag:
    n: int
    edges: frozenset[Edge]

    def __init__(self, n: int, edges: Iterable[Edge] = ()) -> None:
        edge_set = frozenset((int(a), int(b)) for a, b in edges)
        for a, b in edge_set:
            if not (0 <= a < n and 0 <= b < n) or a == b:
                raise ValueError(f"bad edge {a}->{b} for {n} nodes")
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "edges", edge_set)
        if self.topological_order() is None:
            raise CycleError(f"edges {sorted(edge_set)} contain a directed cycle")

    def parents(self, v: int) -> frozenset[int]:
        return frozenset(a for a, b in self.edges if b == v)

    def children(self, v: int) -> frozenset[int]:
        return frozenset(b for a, b in self.edges if a == v)

    def adjacent(self, a: int, b: int) -> bool:
        return (a, b) in self.edges or (b, a) in self.edges

    def topological_order(self) -> list[int] | None:
        indeg = [0] * self.n
        for _, b in self.edges:
            indeg[b] += 1
        ready = [v for v in range(self.n) if indeg[v] == 0]
        order = []
        while ready:
            v = ready.pop(0)
            order.append(v)
            for a, b in sorted(self.edges):
                if a == v:
                    indeg[b] -= 1
                    if indeg[b] == 0:
                        ready.append(b)
        return order if len(order) == self.n else None

    def ancestors_of(self, nodes: Iterable[int]) -> set[int]:
        out = set(nodes)
        frontier = list(out)
        while frontier:
            v = frontier.pop()
            for p in self.parents(v):
                if p not in out:
                    out.add(p)
                    frontier.append(p)
        return out

    @property
    def sort_key(self) -> tuple[int, tuple[Edge, ...]]:
        return (len(self.edges), tuple(sorted(self.edges)))

    def __repr__(self) -> str:
        body = ", ".join(f"{a}->{b}" for a, b in sorted(self.edges))
        return f"Dag(n={self.n}, [{body}])"


@dataclass(frozen=True)
class Pdag:
    """Partially directed state of knowledge about the true graph."""

    n: int
    directed: frozenset[Edge]
    undirected: frozenset[Edge]  # stored as (low, high)

    @property
    def absent(self) -> frozenset[Edge]:
        taken = {tuple(sorted(e)) for e in self.directed} | set(self.undirected)
        return frozenset(p for p in itertools.combinations(range(self.n), 2) if p not in taken)

    @property
    def fully_directed(self) -> bool:
        return not self.undirected

    def as_dag(self) -> Dag:
        if self.undirected:
            raise ValueError("state still has undirected edges")
        return Dag(self.n, self.directed)


@dataclass(frozen=True)
class ExperimentRecord:
    intervention: Intervention
    ci_pattern: frozenset[CIFact]


def manipulate(dag: Dag, s: Intervention | Iterable[int]) -> Dag:
    members = _members(s)
    return Dag(dag.n, (e for e in dag.edges if e[1] not in members))


def d_separated(dag: Dag, i: int, j: int, z: Iterable[int] = ()) -> bool:
    """d-separation via the moralized ancestral graph."""
    z = frozenset(z)
    if i == j or i in z or j in z:
        raise InvalidQueryError(f"query ({i}, {j} | {sorted(z)}) overlaps")
    if not all(0 <= v < dag.n for v in (i, j, *z)):
        raise InvalidQueryError("query mentions unknown nodes")
    keep = dag.ancestors_of({i, j} | z)
    nbrs: dict[int, set[int]] = {v: set() for v in keep}
    for a, b in dag.edges:
        if a in keep and b in keep:
            nbrs[a].add(b)
            nbrs[b].add(a)
    for v in keep:
        pa = [p for p in dag.parents(v) if p in keep]
        for a, b in itertools.combinations(pa, 2):
            nbrs[a].add(b)
            nbrs[b].add(a)
    seen = {i}
    stack = [i]
    while stack:
        v = stack.pop()
        for w in nbrs[v]:
            if w in z or w in seen:
                continue
            if w == j:
                return False
            seen.add(w)
            stack.append(w)
    return True


@lru_cache(maxsize=200_000)
def _pattern(n: int, edges: frozenset[Edge]) -> frozenset[CIFact]:
    dag = Dag(n, edges)
    facts = []
    for i, j in itertools.combinations(range(n), 2):
        rest = [v for v in range(n) if v not in (i, j)]
        for size in range(len(rest) + 1):
            for z in itertools.combinations(rest, size):
                if d_separated(dag, i, j, z):
                    facts.append((i, j, frozenset(z)))
    return frozenset(facts)


def ci_pattern(dag: Dag) -> frozenset[CIFact]:
    """Every conditional independence i _||_ j | Z (i < j) implied by ``dag``."""
    return _pattern(dag.n, dag.edges)


def run_experiment(true_dag: Dag, s: Intervention | Iterable[int]) -> ExperimentRecord:
    s = s if isinstance(s, Intervention) else Intervention(s)
    return ExperimentRecord(s, ci_pattern(manipulate(true_dag, s)))


def _oracle_adjacent(pattern: frozenset[CIFact], i: int, j: int) -> bool:
    # dependent given every conditioning set
    a, b = min(i, j), max(i, j)
    return not any(f[0] == a and f[1] == b for f in pattern)


def _sepset(pattern: frozenset[CIFact], i: int, j: int) -> frozenset[int] | None:
    a, b = min(i, j), max(i, j)
    found = sorted((f[2] for f in pattern if f[0] == a and f[1] == b), key=lambda z: (len(z), sorted(z)))
    return found[0] if found else None


def infer(
    true_dag: Dag,
    family: Sequence[Intervention | Iterable[int]],
    orient_v_structures: bool = False,
) -> list[Pdag]:
    """Knowledge states: the observational one, then one after each experiment."""
    n = true_dag.n
    obs = ci_pattern(true_dag)
    skeleton = [p for p in itertools.combinations(range(n), 2) if _oracle_adjacent(obs, *p)]
    adjacent = set(skeleton)
    directed: set[Edge] = set()

    if orient_v_structures:
        for i, j in itertools.combinations(range(n), 2):
            if (i, j) in adjacent:
                continue
            sep = _sepset(obs, i, j)
            for k in range(n):
                if k in (i, j) or sep is None or k in sep:
                    continue
                if tuple(sorted((i, k))) in adjacent and tuple(sorted((j, k))) in adjacent:
                    for a in (i, j):
                        if (k, a) not in directed:
                            directed.add((a, k))

    def state() -> Pdag:
        und = frozenset(p for p in skeleton if p not in directed and (p[1], p[0]) not in directed)
        return Pdag(n, frozenset(directed), und)

    states = [state()]
    for s in family:
        members = _members(s)
        pattern = ci_pattern(manipulate(true_dag, members))
        for a, b in skeleton:
            if (a in members) == (b in members):
                continue
            src, dst = (a, b) if a in members else (b, a)
            if _oracle_adjacent(pattern, src, dst):
                directed.add((src, dst))
            else:
                directed.add((dst, src))  # the edge pointed into src and was cut
        states.append(state())
    return states


def enumerate_dags(n: int) -> list[Dag]:
    """All labeled DAGs on ``n`` nodes, ordered by edge count then edge list."""
    if n > MAX_ENUMERATE:
        raise SizeLimitError(f"DAG enumeration is limited to n <= {MAX_ENUMERATE}")
    return list(_all_dags(n))


@lru_cache(maxsize=None)
def _all_dags(n: int) -> tuple[Dag, ...]:
    pairs = list(itertools.combinations(range(n), 2))
    out = []
    for states in itertools.product((0, 1, 2), repeat=len(pairs)):
        edges = []
        for (a, b), st in zip(pairs, states):
            if st == 1:
                edges.append((a, b))
            elif st == 2:
                edges.append((b, a))
        try:
            out.append(Dag(n, edges))
        except CycleError:
            continue
    out.sort(key=lambda d: d.sort_key)
    return tuple(out)


@dataclass(frozen=True)
class IdentifiabilityVerdict:
    identifies: bool
    witness: tuple[Dag, Dag] | None = None

    def __bool__(self) -> bool:
        return self.identifies


def uniquely_identifies(family: Iterable[Intervention | Iterable[int]], n: int) -> IdentifiabilityVerdict:
    """True iff the family's combined CI patterns separate every pair of DAGs."""
    if n > MAX_EXHAUSTIVE:
        raise SizeLimitError(f"exhaustive verification is limited to n <= {MAX_EXHAUSTIVE}")
    family = [_members(s) for s in family]
    seen: dict[tuple, Dag] = {}
    for dag in _all_dags(n):
        signature = tuple(ci_pattern(manipulate(dag, s)) for s in family)
        other = seen.get(signature)
        if other is not None:
            return IdentifiabilityVerdict(False, (other, dag))
        seen[signature] = dag
    return IdentifiabilityVerdict(True)


def to_dot(graph: Dag | Pdag, name: str = "G", labels: Sequence[str] | None = None) -> str:
    """DOT text: arrows for directed edges, plain lines for undirected ones."""
    labels = list(labels) if labels is not None else [str(v) for v in range(graph.n)]
    lines = [f"digraph {name} {{", "  node [shape=circle];"]
    for v in range(graph.n):
        lines.append(f'  {v} [label="{labels[v]}"];')
    directed = graph.edges if isinstance(graph, Dag) else graph.directed
    for a, b in sorted(directed):
        lines.append(f"  {a} -> {b};")
    if isinstance(graph, Pdag):
        for a, b in sorted(graph.undirected):
            lines.append(f"  {a} -> {b} [dir=none];")
    lines.append("}")
    return "\n".join(lines) + "\n"
