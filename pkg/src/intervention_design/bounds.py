"""Word-counting bounds on how many more experiments a partial design needs.

Fix the experiments chosen so far.  Each variable's membership pattern over
them is a binary word; variables sharing a word form a group.  Pairs inside
a group are not yet told apart, so the experiments still to be added must
give the group members distinct sub-words (UPC, identifiability) or
pairwise incomparable sub-words (OPC).  Every added experiment manipulates
at most ``limit`` variables, which caps the total weight of the sub-words.
The smallest word length meeting all of that is a valid lower bound on the
number of experiments still missing.  Pairs across groups are ignored, so
the bound is a relaxation and stays valid under any exclusions.
"""

from __future__ import annotations

import math
from functools import lru_cache
from math import comb

from .combinatorics import lightest_codes_weight
from .model import ConditionKind


@lru_cache(maxsize=None)
def _antichain_weight(count: int, bits: int) -> int | None:
    """Lower bound on the total weight of ``count`` incomparable words of weight >= 2.

    Solves the LYM relaxation ``sum_w x_w / C(bits, w) <= 1`` exactly; its
    optimum sits on at most two layers.
    """
    if count == 0:
        return 0
    if bits < 2:
        return None
    layers = list(range(2, max(2, bits // 2) + 1))
    layers = [w for w in layers if w < bits] or ([2] if count == 1 and bits >= 2 else [])
    if not layers or count > max(comb(bits, w) for w in layers):
        return None
    best = math.inf
    for w in layers:
        if count <= comb(bits, w):
            best = min(best, count * w)
    for a in layers:
        for b in layers:
            if b <= a:
                continue
            ca, cb = comb(bits, a), comb(bits, b)
            x_a = (1 - count / cb) / (1 / ca - 1 / cb)
            x_b = count - x_a
            if x_a >= -1e-12 and x_b >= -1e-12:
                best = min(best, a * x_a + b * x_b)
    return math.ceil(best - 1e-9)


@lru_cache(maxsize=None)
def group_weight(kind: ConditionKind, size: int, broken: bool, bits: int, limit: int) -> int | None:
    """Least total weight the new sub-words of one group must carry.

    ``broken`` says whether the group already has a chosen experiment that
    leaves all its members passive (identifiability only).  None means the
    group cannot be resolved with ``bits`` more experiments.
    """
    if size <= 1:
        return 0
    if kind is ConditionKind.UPC:
        return lightest_codes_weight(size, bits)
    if kind is ConditionKind.IDENTIFIABILITY:
        return lightest_codes_weight(size, bits, exclude_full=not broken)
    if kind is ConditionKind.OPC:
        # a one-element word {a} forces column a to hold no other group member
        best = None
        for singles in range(0, min(size, bits) + 1):
            rest = _antichain_weight(size - singles, bits - singles)
            if rest is None or rest > limit * (bits - singles):
                continue
            total = singles + rest
            best = total if best is None else min(best, total)
        return best
    return 0


@lru_cache(maxsize=100_000)
def columns_needed(kind: ConditionKind, groups: tuple[tuple[int, bool], ...], limit: int, max_cols: int) -> int | None:
    """Fewest additional experiments (at most ``max_cols``) that can resolve ``groups``.

    ``groups`` lists (size, broken) for every group with two or more members.
    Returns None when even ``max_cols`` experiments cannot suffice.
    """
    if not groups or kind is ConditionKind.CC:
        return 0
    if limit <= 0:
        return None
    for bits in range(0, max_cols + 1):
        total = 0
        for size, broken in groups:
            w = group_weight(kind, size, broken, bits, limit)
            if w is None:
                break
            total += w
        else:
            if total <= limit * bits:
                return bits
    return None


def weight_needed(kind: ConditionKind, groups: tuple[tuple[int, bool], ...], limit: int, max_cols: int) -> int | None:
    """Least total size of the additional experiments when at most ``max_cols`` are added."""
    if not groups or kind is ConditionKind.CC:
        return 0
    total = 0
    for size, broken in groups:
        w = group_weight(kind, size, broken, max_cols, limit)
        if w is None:
            return None
        total += w
    return total


def word_groups(n: int, masks: list[int], kind: ConditionKind) -> tuple[tuple[int, bool], ...]:
    """Group variables by their membership word over the chosen interventions."""
    full = (1 << len(masks)) - 1
    counts: dict[int, int] = {}
    for v in range(n):
        word = 0
        for t, m in enumerate(masks):
            if (m >> v) & 1:
                word |= 1 << t
        counts[word] = counts.get(word, 0) + 1
    out = []
    for word, size in counts.items():
        if size >= 2:
            broken = kind is ConditionKind.IDENTIFIABILITY and word != full
            out.append((size, broken))
    return tuple(sorted(out))
