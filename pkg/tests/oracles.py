"""Brute-force references shared by several test modules."""

from __future__ import annotations

import itertools

import numpy as np

from intervention_design.model import CoverModel


def coverage_masks(model: CoverModel) -> list[int]:
    masks = []
    for k in range(len(model.pool)):
        bits = 0
        for r in np.flatnonzero(model.matrix[:, k]):
            bits |= 1 << int(r)
        masks.append(bits)
    return masks


def feasible_mask(model: CoverModel):
    groups = [sum(1 << r for r in model.registry[p]) for p in model.pairs]
    need = model.need

    def ok(cov: int) -> bool:
        return all(bin(cov & g).count("1") >= t for g, t in zip(groups, need))

    return ok


def all_feasible(model: CoverModel, max_size: int | None = None):
    """(cost, chosen tuple) for every feasible selection."""
    masks = coverage_masks(model)
    ok = feasible_mask(model)
    K = len(masks)
    top = K if max_size is None else min(K, max_size)
    out = []
    for r in range(top + 1):
        for combo in itertools.combinations(range(K), r):
            cov = 0
            for k in combo:
                cov |= masks[k]
            if ok(cov):
                out.append((float(sum(model.costs[k] for k in combo)), combo))
    return out


def brute_optimum(model: CoverModel):
    """(optimum, sorted list of optimal selections) or (None, [])."""
    feas = all_feasible(model)
    if not feas:
        return None, []
    best = min(c for c, _ in feas)
    return best, sorted(combo for c, combo in feas if abs(c - best) <= 1e-9)


def path_d_separated(dag, i: int, j: int, z) -> bool:
    """d-separation by enumerating every simple path of the skeleton."""
    z = set(z)
    nbrs = {v: set() for v in range(dag.n)}
    for a, b in dag.edges:
        nbrs[a].add(b)
        nbrs[b].add(a)

    def descendants(v):
        out, stack = set(), [v]
        while stack:
            u = stack.pop()
            for c in dag.children(u):
                if c not in out:
                    out.add(c)
                    stack.append(c)
        return out

    def blocked(path):
        for t in range(1, len(path) - 1):
            prev, mid, nxt = path[t - 1], path[t], path[t + 1]
            collider = (prev, mid) in dag.edges and (nxt, mid) in dag.edges
            if collider:
                if mid not in z and not (descendants(mid) & z):
                    return True
            elif mid in z:
                return True
        return False

    def paths(v, seen):
        if v == j:
            yield list(seen)
            return
        for w in sorted(nbrs[v]):
            if w not in seen:
                seen.append(w)
                yield from paths(w, seen)
                seen.pop()

    return all(blocked(p) for p in paths(i, [i]))
