"""Exact combinatorics on bitmask-encoded subsets.

A subset of the ground set [n] is a plain ``int`` in which element ``e``
(1-based) occupies bit ``e - 1``.  Every function here is pure.

Ranks are colexicographic: for elements ``e_1 < ... < e_k`` the rank is
``sum(C(e_i - 1, i))``.  Colex order on masks coincides with numeric order of
the masks, so :func:`next_subset` (Gosper's successor) walks ranks 0, 1, 2, ...
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

MAX_GROUND = 64

Block = int


def binomial(n: int, k: int) -> int:
    """Exact ``C(n, k)``; zero when ``k > n``."""
    if n < 0 or k < 0:
        raise ValueError(f"binomial needs n, k >= 0, got ({n}, {k})")
    return math.comb(n, k)


def binomial_table(nmax: int = MAX_GROUND) -> np.ndarray:
    """``table[m, j] = C(m, j)`` for ``0 <= m, j <= nmax`` as int64.

    Raises OverflowError instead of wrapping if an entry does not fit.
    """
    table = np.zeros((nmax + 1, nmax + 1), dtype=np.int64)
    limit = np.iinfo(np.int64).max
    for m in range(nmax + 1):
        for j in range(m + 1):
            value = math.comb(m, j)
            if value > limit:
                raise OverflowError(f"C({m}, {j}) = {value} exceeds int64")
            table[m, j] = value
    return table


def make_block(elements: Iterable[int], n: int = MAX_GROUND) -> Block:
    mask = 0
    for e in elements:
        if not 1 <= e <= n:
            raise ValueError(f"element {e} outside [1, {n}]")
        bit = 1 << (e - 1)
        if mask & bit:
            raise ValueError(f"duplicate element {e}")
        mask |= bit
    return mask


def block_elements(mask: Block) -> list[int]:
    """Ascending 1-based elements of ``mask``."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return out


def popcount(mask: Block) -> int:
    return bin(mask).count("1")


def intersection_size(a: Block, b: Block) -> int:
    return popcount(a & b)


def johnson_distance(a: Block, b: Block) -> int:
    """Distance in J(n, 6): ``6 - |a & b|``."""
    for mask in (a, b):
        if popcount(mask) != 6:
            raise ValueError(f"johnson_distance needs 6-sets, got {block_elements(mask)}")
    return 6 - intersection_size(a, b)


@dataclass(frozen=True)
class SubsetRank:
    rank: int
    k: int
    n: int

    def __post_init__(self) -> None:
        if not 0 <= self.k <= self.n <= MAX_GROUND:
            raise ValueError(f"need 0 <= k <= n <= {MAX_GROUND}, got k={self.k}, n={self.n}")
        if not 0 <= self.rank < binomial(self.n, self.k):
            raise ValueError(f"rank {self.rank} outside [0, C({self.n},{self.k}))")


def rank_subset(s: Block, k: int, n: int = MAX_GROUND) -> SubsetRank:
    elements = block_elements(s)
    if len(elements) != k:
        raise ValueError(f"subset has {len(elements)} elements, expected {k}")
    if elements and elements[-1] > n:
        raise ValueError(f"element {elements[-1]} outside [1, {n}]")
    rank = sum(math.comb(e - 1, i) for i, e in enumerate(elements, start=1))
    return SubsetRank(rank, k, n)


def unrank_subset(r: SubsetRank) -> Block:
    rank = r.rank
    mask = 0
    top = r.n
    for i in range(r.k, 0, -1):
        # largest c < top with C(c, i) <= rank
        c = top - 1
        while math.comb(c, i) > rank:
            c -= 1
        mask |= 1 << c
        rank -= math.comb(c, i)
        top = c
    return mask


def first_subset(k: int) -> Block:
    return (1 << k) - 1


def next_subset(s: Block, n: int) -> Block | None:
    """Colex successor of ``s`` among subsets of [n] of equal size, or None at the end."""
    if s == 0:
        return None
    low = s & -s
    ripple = s + low
    nxt = (((ripple ^ s) >> 2) // low) | ripple
    if nxt >> n:
        return None
    return nxt


def iter_subsets(n: int, k: int) -> Iterator[Block]:
    """Every k-subset of [n] in colex order."""
    if k > n:
        return
    s: Block | None = first_subset(k)
    while s is not None:
        yield s
        s = next_subset(s, n)
