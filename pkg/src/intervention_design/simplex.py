"""Dense tableau simplex.

Pricing is Dantzig's most negative reduced cost; after a run of degenerate
pivots it falls back to Bland's rule, which cannot cycle, until the
objective moves again.

Only the form needed by the covering relaxations is supported::

    maximize  c @ z   subject to  A @ z <= b,  z >= 0,  b >= 0

so the slack basis is feasible and a single phase suffices.  Covering LPs
are solved through their duals, which have exactly this shape.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

TOL = 1e-9
DEGENERATE_RUN = 50


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" or "unbounded"
    value: float
    z: np.ndarray  # primal point of the max problem
    duals: np.ndarray  # multipliers of the <= rows, i.e. solution of the min dual
    pivots: int


def maximize(c: np.ndarray, A: np.ndarray, b: np.ndarray, max_pivots: int = 1_000_000) -> LPResult:
    c = np.asarray(c, dtype=float)
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    m, n = A.shape
    if np.any(b < -TOL):
        raise ValueError("right-hand side must be nonnegative for the slack basis")

    # row 0 is the objective row (reduced costs), column -1 the rhs
    T = np.zeros((m + 1, n + m + 1))
    T[0, :n] = -c
    T[1:, :n] = A
    T[1:, n : n + m] = np.eye(m)
    T[1:, -1] = np.maximum(b, 0.0)
    basis = np.arange(n, n + m)

    pivots = 0
    stalled = 0
    while True:
        reduced = T[0, :-1]
        entering = np.flatnonzero(reduced < -TOL)
        if entering.size == 0:
            break
        bland = stalled >= DEGENERATE_RUN
        col = int(entering[0]) if bland else int(entering[np.argmin(reduced[entering])])
        column = T[1:, col]
        pos = np.flatnonzero(column > TOL)
        if pos.size == 0:
            return LPResult("unbounded", np.inf, np.full(n, np.nan), np.full(m, np.nan), pivots)
        ratios = T[1 + pos, -1] / column[pos]
        best = ratios.min()
        ties = pos[ratios <= best + TOL * max(1.0, abs(best))]
        row = int(ties[np.argmin(basis[ties])])  # lowest basic index breaks ties
        stalled = stalled + 1 if best <= TOL else 0
        T[1 + row] /= T[1 + row, col]
        piv = T[1 + row]
        factors = T[:, col].copy()
        factors[1 + row] = 0.0
        T -= np.outer(factors, piv)
        basis[row] = col
        pivots += 1
        if pivots >= max_pivots:
            raise RuntimeError("simplex pivot limit reached")

    z = np.zeros(n + m)
    z[basis] = T[1:, -1]
    return LPResult("optimal", float(T[0, -1]), z[:n], T[0, n : n + m].copy(), pivots)


def minimize_covering(c: np.ndarray, G: np.ndarray, h: np.ndarray) -> LPResult:
    """Solve ``min c @ v`` s.t. ``G @ v >= h``, ``v >= 0`` with ``c >= 0``.

    Returns the covering optimum in ``value`` and its solution ``v`` in
    ``duals``; an "unbounded" status means the covering LP is infeasible.
    """
    c = np.asarray(c, dtype=float)
    G = np.asarray(G, dtype=float)
    h = np.asarray(h, dtype=float)
    if np.any(c < -TOL):
        raise ValueError("covering costs must be nonnegative")
    if G.shape[0] == 0:
        return LPResult("optimal", 0.0, np.zeros(0), np.zeros(G.shape[1]), 0)
    res = maximize(h, G.T, c)
    return res
