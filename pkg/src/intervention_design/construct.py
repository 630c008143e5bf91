"""Direct construction of designs in word space.

A design with ``bits`` experiments assigns every variable a binary word
(bit t set when experiment t manipulates it).  The search below picks the
words one variable at a time, lightest first, keeping every experiment
within the size limit.  It serves as the primal heuristic of the exact
solver on complete candidate pools.
"""

from __future__ import annotations

import itertools
import time

from .model import ConditionKind


class _Budget(Exception):
    pass


def _layer_words(bits: int, weight: int) -> list[int]:
    return [sum(1 << t for t in c) for c in itertools.combinations(range(bits), weight)]


def candidate_words(kind: ConditionKind, n: int, bits: int, limit: int) -> list[tuple[int, int]]:
    """(effective weight, word) pairs in search order."""
    full = (1 << bits) - 1
    words: list[tuple[int, int]] = []
    count = 0
    extra_layers = 1
    for w in range(bits + 1):
        for word in _layer_words(bits, w):
            if n >= 2 and word == full and kind in (ConditionKind.IDENTIFIABILITY, ConditionKind.OPC):
                continue
            if kind is ConditionKind.OPC and n >= 2 and word == 0:
                continue
            eff = limit if (kind is ConditionKind.OPC and w == 1) else w
            words.append((eff, word))
            count += 1
        if count >= n:
            if extra_layers == 0:
                break
            extra_layers -= 1
    words.sort(key=lambda ew: (ew[0], bin(ew[1]).count("1"), _lex(ew[1])))
    return words


def _lex(word: int) -> tuple[int, ...]:
    out = []
    t = 0
    while word:
        if word & 1:
            out.append(t)
        word >>= 1
        t += 1
    return tuple(out)


def construct_words(
    kind: ConditionKind,
    n: int,
    bits: int,
    limit: int,
    node_budget: int = 100_000,
    deadline: float | None = None,
) -> list[int] | None:
    """Find ``n`` admissible words of length ``bits`` or return None.

    Admissible means distinct (UPC), distinct and not all ones
    (identifiability), or pairwise incomparable (OPC), with at most ``limit``
    words sharing any bit.
    """
    if kind is ConditionKind.CC:
        return [0] * n
    if bits < 0 or limit < 0:
        return None
    words = candidate_words(kind, n, bits, limit)
    antichain = kind is ConditionKind.OPC
    singles = {1 << t for t in range(bits)}
    loads = [0] * bits
    chosen: list[int] = []
    nodes = 0

    def fits(word: int) -> bool:
        t = 0
        while word:
            if word & 1 and loads[t] >= limit:
                return False
            word >>= 1
            t += 1
        return True

    def compatible(word: int) -> bool:
        if not antichain:
            return True
        for d in chosen:
            both = word & d
            if both == word or both == d:
                return False
        return True

    def apply(word: int, sign: int) -> None:
        t = 0
        closing = antichain and word in singles
        while word:
            if word & 1:
                loads[t] += sign * (limit if closing else 1)
            word >>= 1
            t += 1

    def dfs(pos: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > node_budget or (deadline is not None and nodes % 256 == 0 and time.monotonic() > deadline):
            raise _Budget
        remaining = n - len(chosen)
        if remaining == 0:
            return True
        usable = [i for i in range(pos, len(words)) if fits(words[i][1]) and compatible(words[i][1])]
        if len(usable) < remaining:
            return False
        capacity = sum(limit - x for x in loads)
        if sum(words[i][0] for i in usable[:remaining]) > capacity:
            return False
        for rank, i in enumerate(usable):
            if len(usable) - rank < remaining:
                break
            word = words[i][1]
            chosen.append(word)
            apply(word, +1)
            if dfs(i + 1):
                return True
            apply(word, -1)
            chosen.pop()
        return False

    try:
        found = dfs(0)
    except _Budget:
        return None
    return list(chosen) if found else None


def words_to_columns(words: list[int], bits: int) -> list[int]:
    """Variable masks of each experiment, given one word per variable."""
    cols = [0] * bits
    for v, word in enumerate(words):
        for t in range(bits):
            if (word >> t) & 1:
                cols[t] |= 1 << v
    return cols


def words_with_column_sums(kind: ConditionKind, n: int, sums: tuple[int, ...]) -> list[int] | None:
    """``n`` admissible words whose bit t is set in exactly ``sums[t]`` of them."""
    bits = len(sums)
    full = (1 << bits) - 1
    if kind is ConditionKind.CC:
        raise ValueError("CC has no word-space form")
    allowed = []
    for word in range(1 << bits):
        if n >= 2 and kind in (ConditionKind.IDENTIFIABILITY, ConditionKind.OPC) and word == full:
            continue
        if n >= 2 and kind is ConditionKind.OPC and word == 0:
            continue
        allowed.append(word)
    weight = [bin(w).count("1") for w in range(1 << bits)]
    left = list(sums)
    chosen: list[int] = []
    antichain = kind is ConditionKind.OPC

    def fits(word: int) -> bool:
        for t in range(bits):
            if (word >> t) & 1 and left[t] == 0:
                return False
        if antichain:
            for d in chosen:
                both = word & d
                if both == word or both == d:
                    return False
        return True

    def dfs(pos: int) -> bool:
        r = n - len(chosen)
        if r == 0:
            return not any(left)
        if max(left) > r or sum(left) > r * bits or len(allowed) - pos < r:
            return False
        for i in range(pos, len(allowed)):
            word = allowed[i]
            if not fits(word):
                continue
            for t in range(bits):
                if (word >> t) & 1:
                    left[t] -= 1
            chosen.append(word)
            if dfs(i + 1):
                return True
            chosen.pop()
            for t in range(bits):
                if (word >> t) & 1:
                    left[t] += 1
        return False

    if sum(sums) > sum(sorted((weight[w] for w in allowed), reverse=True)[:n]):
        return None
    return list(chosen) if dfs(0) else None
