from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from intervention_design.causal import (
    Dag,
    Pdag,
    ci_pattern,
    d_separated,
    enumerate_dags,
    infer,
    manipulate,
    run_experiment,
    to_dot,
    uniquely_identifies,
)
from intervention_design.combinatorics import Intervention, ProblemSpec, generate_candidates
from intervention_design.errors import CycleError, InvalidQueryError, SizeLimitError
from intervention_design.model import Selection, build, is_feasible
from intervention_design.solver import enumerate_optima, solve

from oracles import path_d_separated
from reference_values import FIG1_EDGES, FIG1_SOLUTION

FIG1 = Dag(4, FIG1_EDGES)

dags = st.integers(1, 4).flatmap(lambda n: st.sampled_from(enumerate_dags(n)))


def test_dag_validation():
    with pytest.raises(CycleError):
        Dag(3, [(0, 1), (1, 2), (2, 0)])
    with pytest.raises(ValueError):
        Dag(2, [(0, 2)])
    with pytest.raises(ValueError):
        Dag(2, [(1, 1)])
    d = Dag(3, [(0, 1), (0, 2)])
    assert d.parents(2) == {0} and d.children(0) == {1, 2}
    assert d.topological_order()[0] == 0


def test_manipulate_examples():
    assert manipulate(Dag(3, [(0, 1), (1, 2)]), [1]).edges == {(1, 2)}
    assert manipulate(FIG1, [0, 1]).edges == {(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)}
    assert manipulate(FIG1, Intervention()) == FIG1


@given(dags, st.data())
def test_manipulate_idempotent(dag, data):
    s = data.draw(st.frozensets(st.integers(0, dag.n - 1)))
    once = manipulate(dag, s)
    assert manipulate(once, s) == once
    assert all(b not in s for _, b in once.edges)
    assert once.edges <= dag.edges


def test_d_separation_examples():
    chain = Dag(3, [(0, 1), (1, 2)])
    assert d_separated(chain, 0, 2, {1})
    assert not d_separated(chain, 0, 2, set())
    collider = Dag(3, [(0, 2), (1, 2)])
    assert d_separated(collider, 0, 1, set())
    assert not d_separated(collider, 0, 1, {2})
    # conditioning on a descendant of the collider also opens it
    assert not d_separated(Dag(4, [(0, 2), (1, 2), (2, 3)]), 0, 1, {3})


def test_fig1_has_no_independences():
    assert ci_pattern(FIG1) == frozenset()


def test_invalid_queries():
    chain = Dag(3, [(0, 1), (1, 2)])
    with pytest.raises(InvalidQueryError):
        d_separated(chain, 0, 0)
    with pytest.raises(InvalidQueryError):
        d_separated(chain, 0, 2, {0})
    with pytest.raises(InvalidQueryError):
        d_separated(chain, 0, 5)


@pytest.mark.parametrize("n", [2, 3])
def test_d_separation_matches_paths_exhaustively(n):
    for dag in enumerate_dags(n):
        for i, j in itertools.combinations(range(n), 2):
            rest = [v for v in range(n) if v not in (i, j)]
            for r in range(len(rest) + 1):
                for z in itertools.combinations(rest, r):
                    assert d_separated(dag, i, j, z) == path_d_separated(dag, i, j, z)


@given(st.sampled_from(enumerate_dags(4)))
def test_d_separation_matches_paths_four_nodes(dag):
    for i, j in itertools.combinations(range(4), 2):
        rest = [v for v in range(4) if v not in (i, j)]
        for r in range(3):
            for z in itertools.combinations(rest, r):
                assert d_separated(dag, i, j, z) == path_d_separated(dag, i, j, z)
                assert d_separated(dag, j, i, z) == d_separated(dag, i, j, z)


def test_run_experiment_examples():
    rec = run_experiment(Dag(2), [])
    assert rec.ci_pattern == {(0, 1, frozenset())}
    rec = run_experiment(Dag(2, [(0, 1)]), [1])
    assert (0, 1, frozenset()) in rec.ci_pattern
    rec = run_experiment(FIG1, [0, 2])
    g = manipulate(FIG1, [0, 2])
    assert rec.intervention == Intervention([0, 2])
    # 0 -> 1 and 2 -> 3 survive, so those pairs stay dependent
    assert not any(f[:2] in ((0, 1), (2, 3)) for f in rec.ci_pattern)
    assert (0, 2, frozenset()) in rec.ci_pattern
    assert g.edges == {(0, 1), (0, 3), (1, 3), (2, 3)}


def test_fig1_inference_trace():
    states = infer(FIG1, list(FIG1_SOLUTION))
    assert len(states) == 4
    assert states[0].directed == frozenset() and len(states[0].undirected) == 6
    assert states[1] == states[0]  # the null experiment orients nothing
    assert states[2].undirected == {(0, 1), (2, 3)}
    assert states[3].fully_directed and states[3].as_dag() == FIG1


def test_inference_single_node():
    states = infer(Dag(1), [[0]])
    assert all(not s.directed and not s.undirected for s in states)


def test_v_structure_flag():
    collider = Dag(3, [(0, 2), (1, 2)])
    plain = infer(collider, [])[0]
    assert plain.undirected == {(0, 2), (1, 2)}
    cpdag = infer(collider, [], orient_v_structures=True)[0]
    assert cpdag.directed == {(0, 2), (1, 2)} and not cpdag.undirected


def test_pdag_partition():
    states = infer(FIG1, [[0, 1]])
    for s in states:
        und = set(s.undirected)
        dirp = {tuple(sorted(e)) for e in s.directed}
        assert not und & dirp and not (und | dirp) & s.absent
        assert len(und) + len(dirp) + len(s.absent) == 6
    with pytest.raises(ValueError):
        states[-1].as_dag()


@pytest.mark.parametrize("n", [2, 3, 4])
def test_inference_soundness(n):
    pool = generate_candidates(ProblemSpec(n, n // 2))
    m = build(pool, "id")
    families = [sel.sets(pool) for sel in enumerate_optima(m, solve(m).objective)][:20]
    for dag in enumerate_dags(n)[:: max(1, n - 2)]:
        for fam in families:
            states = infer(dag, fam)
            skeleton = {tuple(sorted(e)) for e in dag.edges}
            for s in states:
                assert s.directed <= dag.edges
                assert {tuple(sorted(e)) for e in s.directed} | set(s.undirected) == skeleton
            assert states[-1].as_dag() == dag


def test_enumerate_counts():
    assert [len(enumerate_dags(n)) for n in range(1, 5)] == [1, 3, 25, 543]
    assert enumerate_dags(2) == [Dag(2), Dag(2, [(0, 1)]), Dag(2, [(1, 0)])]
    with pytest.raises(SizeLimitError):
        enumerate_dags(6)


def test_enumerate_five_nodes():
    assert len(enumerate_dags(5)) == 29281


def test_uniquely_identifies_examples():
    assert uniquely_identifies(list(FIG1_SOLUTION), 4)
    verdict = uniquely_identifies([[]], 2)
    assert not verdict
    assert verdict.witness == (Dag(2, [(0, 1)]), Dag(2, [(1, 0)]))
    assert uniquely_identifies([[0], [1], [2]], 3)
    with pytest.raises(SizeLimitError):
        uniquely_identifies([[0]], 5)


def test_sufficiency_three_variables():
    pool = generate_candidates(ProblemSpec(3, 1))
    m = build(pool, "id")
    for sel in enumerate_optima(m, solve(m).objective):
        assert uniquely_identifies(sel.sets(pool), 3)


def test_necessity_report_three_variables(capsys):
    # reported, not asserted: failing the pair conditions need not make a
    # specific family ambiguous
    pool = generate_candidates(ProblemSpec(3, 3, cap_to_half=False))
    m = build(pool, "id")
    agree = disagree = 0
    for r in range(0, 4):
        for combo in itertools.combinations(range(len(pool)), r):
            sel = Selection(combo)
            cond = is_feasible(m, sel).feasible
            sem = bool(uniquely_identifies(sel.sets(pool), 3))
            assert sem or not cond  # sufficiency must hold
            agree += cond == sem
            disagree += cond != sem
    with capsys.disabled():
        print(f"\nnecessity census n=3: {agree} families agree, {disagree} identify without meeting the conditions")


def test_dot_export():
    text = to_dot(Dag(2, [(0, 1)]))
    assert text.startswith("digraph G {") and "0 -> 1;" in text
    pd = Pdag(3, frozenset({(0, 1)}), frozenset({(1, 2)}))
    text = to_dot(pd, name="s")
    assert "0 -> 1;" in text and "1 -> 2 [dir=none];" in text
    assert text.strip().endswith("}")
