"""Multi-indices on the lattice N^r, lattice boxes and monotone paths.

Directions are 1-based throughout (``step_up(n, 1)`` adds the first unit
vector).  When indices are serialized they become plain 0-based JSON integer
arrays, e.g. ``[2, 1]``; directions inside a serialized path stay 1-based.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import BelowLattice


@dataclass(frozen=True, order=True)
class MultiIndex:
    entries: tuple[int, ...]

    def __post_init__(self):
        entries = tuple(int(e) for e in self.entries)
        if not entries:
            raise ValueError("a multi-index needs at least one entry")
        if any(e < 0 for e in entries):
            raise ValueError(f"negative entry in multi-index {list(entries)}")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def of(cls, *entries: int) -> "MultiIndex":
        return cls(tuple(entries))

    @classmethod
    def zero(cls, r: int) -> "MultiIndex":
        return cls((0,) * r)

    @property
    def r(self) -> int:
        return len(self.entries)

    def size(self) -> int:
        return sum(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, j):
        return self.entries[j]

    def __iter__(self):
        return iter(self.entries)

    def __repr__(self):
        return f"MultiIndex({self.entries})"

    def __str__(self):
        return "(" + ",".join(map(str, self.entries)) + ")"

    def up(self, j: int) -> "MultiIndex":
        return step_up(self, j)

    def down(self, j: int) -> "MultiIndex":
        return step_down(self, j)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def leq(self, other: "MultiIndex") -> bool:
        """Componentwise comparison."""
        return all(a <= b for a, b in zip(self.entries, other.entries))

    def to_json(self) -> list[int]:
        return list(self.entries)


def as_index(n) -> MultiIndex:
    if isinstance(n, MultiIndex):
        return n
    if isinstance(n, int):
        return MultiIndex((n,))
    return MultiIndex(tuple(n))


def _check_direction(n: MultiIndex, j: int):
    if not 1 <= j <= n.r:
        raise ValueError(f"direction {j} outside 1..{n.r}")


def step_up(n: MultiIndex, j: int) -> MultiIndex:
    _check_direction(n, j)
    e = list(n.entries)
    e[j - 1] += 1
    return MultiIndex(tuple(e))


def step_down(n: MultiIndex, j: int) -> MultiIndex:
    _check_direction(n, j)
    e = list(n.entries)
    if e[j - 1] == 0:
        raise BelowLattice(f"entry {j} of {n} is already 0")
    e[j - 1] -= 1
    return MultiIndex(tuple(e))


def enumerate_box(limits: Sequence[int]) -> list[MultiIndex]:
    """All indices with ``entries <= limits`` in graded lexicographic order.

    Every index appears after all of its lower neighbours, which is what the
    recurrence-driven generators rely on.
    """
    limits = tuple(int(m) for m in limits)
    if any(m < 0 for m in limits):
        raise ValueError("box limits must be non-negative")
    pts = itertools.product(*(range(m + 1) for m in limits))
    return [MultiIndex(p) for p in sorted(pts, key=lambda p: (sum(p), p))]


def in_box(n: MultiIndex, limits: Sequence[int]) -> bool:
    return all(a <= m for a, m in zip(n.entries, limits))


@dataclass(frozen=True)
class LatticePath:
    """A monotone path from the origin; ``steps`` are 1-based directions."""

    steps: tuple[int, ...]
    r: int

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(int(s) for s in self.steps))
        if any(not 1 <= s <= self.r for s in self.steps):
            raise ValueError(f"path step outside 1..{self.r}: {self.steps}")

    @property
    def origin(self) -> MultiIndex:
        return MultiIndex.zero(self.r)

    @property
    def end(self) -> MultiIndex:
        return self.indices()[-1]

    def indices(self) -> list[MultiIndex]:
        """The visited indices n_0 = 0, n_1, ..., n_{|n|}."""
        cur = self.origin
        out = [cur]
        for s in self.steps:
            cur = step_up(cur, s)
            out.append(cur)
        return out


def path_count(n: MultiIndex) -> int:
    """Number of monotone paths from 0 to n (a multinomial coefficient)."""
    total = math.factorial(n.size())
    for e in n.entries:
        total //= math.factorial(e)
    return total


def _all_step_sequences(n: MultiIndex) -> Iterable[tuple[int, ...]]:
    # lexicographic multiset permutations, no duplicates
    counts = list(n.entries)
    size = n.size()
    seq: list[int] = []

    def rec():
        if len(seq) == size:
            yield tuple(seq)
            return
        for d in range(len(counts)):
            if counts[d]:
                counts[d] -= 1
                seq.append(d + 1)
                yield from rec()
                seq.pop()
                counts[d] += 1

    yield from rec()


def monotone_paths(n: MultiIndex, max_count: int, seed: int = 0) -> list[LatticePath]:
    """Monotone paths from the origin to ``n``.

    All paths are returned (lexicographic order) when there are at most
    ``max_count`` of them; otherwise ``max_count`` distinct paths are drawn by
    shuffling the step multiset with a generator seeded by ``seed``.
    """
    if max_count < 1:
        raise ValueError("max_count must be >= 1")
    n = as_index(n)
    if path_count(n) <= max_count:
        return [LatticePath(s, n.r) for s in _all_step_sequences(n)]
    rng = random.Random(seed)
    base = [d + 1 for d, e in enumerate(n.entries) for _ in range(e)]
    seen: set[tuple[int, ...]] = set()
    out = []
    while len(out) < max_count:
        rng.shuffle(base)
        t = tuple(base)
        if t not in seen:
            seen.add(t)
            out.append(LatticePath(t, n.r))
    return out
