"""Variable-set arithmetic: candidate pools, pair classification, lower bounds."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Iterator, Sequence

from .errors import InvalidPairError, InvalidSpecError


@dataclass(frozen=True)
class ProblemSpec:
    """Size of the system and the admissible intervention sizes.

    ``k_max`` bounds the number of variables manipulated in one experiment.
    With ``cap_to_half`` the bound is further reduced to ``n // 2``.
    """

    n: int
    k_max: int
    cap_to_half: bool = True
    include_null: bool = True

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise InvalidSpecError(f"n must be a positive integer, got {self.n!r}")
        if not isinstance(self.k_max, int) or self.k_max < 0:
            raise InvalidSpecError(f"k_max must be a nonnegative integer, got {self.k_max!r}")

    @property
    def size_limit(self) -> int:
        if self.cap_to_half:
            return min(self.k_max, self.n // 2)
        return min(self.k_max, self.n)


@dataclass(frozen=True, order=False)
class Intervention:
    """A set of manipulated variables. The empty set is passive observation."""

    members: frozenset[int] = field(default_factory=frozenset)

    def __init__(self, members: Iterable[int] = ()) -> None:
        object.__setattr__(self, "members", frozenset(int(v) for v in members))

    @property
    def mask(self) -> int:
        out = 0
        for v in self.members:
            out |= 1 << v
        return out

    @property
    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (len(self.members), tuple(sorted(self.members)))

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, v: object) -> bool:
        return v in self.members

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.members))

    def __lt__(self, other: Intervention) -> bool:
        return self.sort_key < other.sort_key

    def __str__(self) -> str:
        if not self.members:
            return "{}"
        return "{" + ",".join(str(v) for v in sorted(self.members)) + "}"

    def __repr__(self) -> str:
        return f"Intervention({str(self)})"


@dataclass(frozen=True)
class CandidatePool:
    """Indexed family of candidate interventions in canonical order."""

    spec: ProblemSpec
    sets: tuple[Intervention, ...]
    complete: bool = False  # every subset of size <= spec.size_limit present

    def __post_init__(self) -> None:
        keys = [s.sort_key for s in self.sets]
        if keys != sorted(keys) or len(set(keys)) != len(keys):
            raise InvalidSpecError("pool sets must be distinct and canonically ordered")
        for s in self.sets:
            if any(v < 0 or v >= self.spec.n for v in s.members):
                raise InvalidSpecError(f"{s} has members outside 0..{self.spec.n - 1}")

    @classmethod
    def from_sets(cls, spec: ProblemSpec, sets: Iterable[Iterable[int]]) -> CandidatePool:
        """Build a pool from arbitrary sets; duplicates are dropped."""
        uniq = {Intervention(s) for s in sets}
        return cls(spec, tuple(sorted(uniq)))

    def __len__(self) -> int:
        return len(self.sets)

    def __getitem__(self, k: int) -> Intervention:
        return self.sets[k]

    def __iter__(self) -> Iterator[Intervention]:
        return iter(self.sets)

    def index_of(self, s: Intervention | Iterable[int]) -> int:
        if not isinstance(s, Intervention):
            s = Intervention(s)
        try:
            return self._index[s]
        except KeyError:
            raise KeyError(f"{s} is not a candidate of this pool") from None

    @property
    def _index(self) -> dict[Intervention, int]:
        idx = self.__dict__.get("_index_cache")
        if idx is None:
            idx = {s: k for k, s in enumerate(self.sets)}
            object.__setattr__(self, "_index_cache", idx)
        return idx

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.sets)

    @property
    def has_null(self) -> bool:
        return bool(self.sets) and len(self.sets[0]) == 0


class PairClass(enum.Enum):
    """How one experiment treats an ordered pair (i, j)."""

    FORWARD = "forward"  # i manipulated, j observed
    BACKWARD = "backward"  # j manipulated, i observed
    NULL = "null"  # both observed
    BOTH_IN = "both_in"  # both manipulated


def generate_candidates(spec: ProblemSpec) -> CandidatePool:
    """All subsets of size 1..limit (plus the null set), canonically ordered."""
    if spec.n < 1:
        raise InvalidSpecError("n must be positive")
    sets: list[Intervention] = []
    if spec.include_null:
        sets.append(Intervention())
    for size in range(1, spec.size_limit + 1):
        sets.extend(Intervention(c) for c in itertools.combinations(range(spec.n), size))
    return CandidatePool(spec, tuple(sets), complete=True)


def pool_size(n: int, limit: int, include_null: bool = True) -> int:
    return int(include_null) + sum(comb(n, m) for m in range(1, limit + 1))


def classify(pair: Sequence[int], s: Intervention | Iterable[int]) -> PairClass:
    i, j = pair
    if i == j:
        raise InvalidPairError(f"pair needs two distinct variables, got ({i}, {j})")
    members = s.members if isinstance(s, Intervention) else frozenset(s)
    a, b = i in members, j in members
    if a and b:
        return PairClass.BOTH_IN
    if a:
        return PairClass.FORWARD
    if b:
        return PairClass.BACKWARD
    return PairClass.NULL


def lightest_codes_weight(count: int, bits: int, exclude_full: bool = False) -> int | None:
    """Total weight of the ``count`` lightest distinct binary words of length ``bits``.

    Returns None when fewer than ``count`` words exist.  With ``exclude_full``
    the all-ones word is not available.
    """
    total, remaining = 0, count
    for w in range(bits + 1):
        if remaining == 0:
            break
        avail = comb(bits, w)
        if exclude_full and w == bits:
            avail -= 1
        take = min(remaining, avail)
        total += take * w
        remaining -= take
    return total if remaining == 0 else None


def lower_bound(n: int, k_max: int) -> int:
    """Minimum number of experiments any identifying design needs.

    Each variable gets the 0/1 word recording which experiments manipulate it.
    An identifying design needs ``n`` distinct words, none of them all ones, and
    every experiment (a word position) carries at most ``k_max`` ones.  The
    smallest length admitting the ``n`` lightest such words within that budget
    is returned.  It equals ``n - 1`` for single-variable experiments (2 when
    ``n = 2``) and ``floor(log2 n) + 1`` once ``k_max >= n // 2``; in between
    it is a valid but not necessarily tight bound.
    """
    if n < 2:
        raise InvalidSpecError(f"lower bound needs n >= 2, got {n}")
    if k_max < 1:
        raise InvalidSpecError("no identifying design exists with k_max = 0")
    m = 1
    while True:
        w = lightest_codes_weight(n, m, exclude_full=True)
        if w is not None and w <= m * k_max:
            return m
        m += 1


def log_bound(n: int) -> int:
    return n.bit_length()  # floor(log2 n) + 1
