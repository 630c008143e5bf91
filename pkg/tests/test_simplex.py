from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.optimize import linprog

from intervention_design.simplex import maximize, minimize_covering


def test_textbook_problem():
    # max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18
    res = maximize([3, 5], [[1, 0], [0, 2], [3, 2]], [4, 12, 18])
    assert res.status == "optimal"
    assert res.value == pytest.approx(36)
    assert res.z == pytest.approx([2, 6])


def test_unbounded():
    res = maximize([1, 1], [[1, -1]], [1])
    assert res.status == "unbounded"


def test_negative_rhs_rejected():
    with pytest.raises(ValueError):
        maximize([1], [[1]], [-1])


def test_degenerate_cycling_example():
    # Beale's example cycles under the largest-coefficient rule
    c = [0.75, -150, 0.02, -6]
    A = [[0.25, -60, -0.04, 9], [0.5, -90, -0.02, 3], [0, 0, 1, 0]]
    res = maximize(c, A, [0, 0, 1])
    assert res.status == "optimal"
    assert res.value == pytest.approx(0.05)


def test_covering_duals_solve_min_problem():
    # min x1 + x2 + x3 with rows {1,2}, {2,3}, {1,3} each covered
    G = np.array([[1, 1, 0], [0, 1, 1], [1, 0, 1]], dtype=float)
    res = minimize_covering(np.ones(3), G, np.ones(3))
    assert res.value == pytest.approx(1.5)
    assert res.duals == pytest.approx([0.5, 0.5, 0.5])
    assert np.all(G @ res.duals >= 1 - 1e-9)


@given(
    st.integers(1, 6),
    st.integers(1, 6),
    st.integers(0, 10_000),
)
def test_against_highs(m, n, seed):
    rng = np.random.default_rng(seed)
    A = rng.integers(-3, 6, size=(m, n)).astype(float)
    b = rng.integers(0, 10, size=m).astype(float)
    c = rng.integers(-2, 6, size=n).astype(float)
    res = maximize(c, A, b)
    ref = linprog(-c, A_ub=A, b_ub=b, bounds=[(0, None)] * n, method="highs")
    if res.status == "optimal":
        assert ref.status == 0
        assert res.value == pytest.approx(-ref.fun, abs=1e-7)
        assert np.all(A @ res.z <= b + 1e-7) and np.all(res.z >= -1e-9)
        # strong duality with the returned multipliers
        assert res.duals @ b == pytest.approx(res.value, abs=1e-7)
    else:
        # z = 0 is feasible, so the only failure mode is unboundedness
        assert ref.status in (2, 3)


@given(st.integers(1, 8), st.integers(1, 8), st.integers(0, 10_000))
def test_covering_against_highs(rows, cols, seed):
    rng = np.random.default_rng(seed)
    G = (rng.random((rows, cols)) < 0.4).astype(float)
    c = rng.integers(0, 5, size=cols).astype(float)
    h = np.ones(rows)
    res = minimize_covering(c, G, h)
    ref = linprog(c, A_ub=-G, b_ub=-h, bounds=[(0, None)] * cols, method="highs")
    if ref.status == 0:
        assert res.status == "optimal"
        assert res.value == pytest.approx(ref.fun, abs=1e-7)
        assert np.all(G @ res.duals >= h - 1e-7)
    else:
        assert res.status == "unbounded"
