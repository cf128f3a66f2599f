"""How a grouping of the base blocks does or does not force a triple of S.

Two groups always force one: six elements split between two groups put at
least three in one of them.  Three groups do not: a subset with two elements
in each group meets every within-group pair-triple in at most two points.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from tricover.combinatorics import Block, binomial, block_elements, iter_subsets, popcount
from tricover.construction import GroupPartition, group_elements
from tricover import kernels

DEFAULT_334 = ((1, 2, 3), (4, 5, 6), (7, 8, 9, 10))
DEFAULT_55 = ((1, 2, 3, 4, 5), (6, 7, 8, 9, 10))


@dataclass(frozen=True)
class DistributionProfile:
    counts: tuple[int, ...]
    grouping: GroupPartition

    @property
    def balanced(self) -> bool:
        return len(self.counts) == 3 and self.counts == (2, 2, 2)


def distribution(s: Block, grouping: GroupPartition) -> DistributionProfile:
    if popcount(s) != 6:
        raise ValueError(f"expected a 6-subset, got {block_elements(s)}")
    return DistributionProfile(tuple(popcount(s & g) for g in grouping.groups), grouping)


def halves_grouping(n: int) -> GroupPartition:
    """The two-group split of [n] into its lower and upper halves."""
    if n % 2 or n < 6:
        raise ValueError(f"need an even n >= 6, got {n}")
    half = (1 << (n // 2)) - 1
    return GroupPartition((half, half << (n // 2)), (n // 2, n // 2), n)


@dataclass
class PigeonholeReport:
    n: int
    checked: int
    violations: int
    min_max_count: int
    boundary_cases: int  # subsets split evenly, max count exactly 3
    exhaustive: bool

    @property
    def holds(self) -> bool:
        return self.violations == 0 and self.min_max_count >= -(-6 // 2)


def check_pigeonhole_55(n: int = 60, sample: int | None = None, seed: int = 0) -> PigeonholeReport:
    """Max group count >= 3 for every 6-subset under the halves split.

    Exhaustive when ``sample`` is None, otherwise ``sample`` random subsets.
    """
    grouping = halves_grouping(n)
    lower = np.uint64(grouping.groups[0])
    if sample is None:
        subsets = np.fromiter(iter_subsets(n, 6), dtype=np.uint64, count=binomial(n, 6))
    else:
        rng = np.random.default_rng(seed)
        ranks = rng.integers(0, binomial(n, 6), size=sample, dtype=np.int64)
        subsets = kernels.unrank_many(ranks, n, kernels.BINOM)
    x = np.bitwise_count(subsets & lower).astype(np.int64)
    biggest = np.maximum(x, 6 - x)
    return PigeonholeReport(
        n=n,
        checked=len(subsets),
        violations=int(np.sum(biggest < 3)),
        min_max_count=int(biggest.min()),
        boundary_cases=int(np.sum(biggest == 3)),
        exhaustive=sample is None,
    )


def group_pairs(group: Block) -> list[Block]:
    """The consecutive pairs {2i-1, 2i} lying inside a group."""
    return [0b11 << (2 * i) for i in range(group.bit_length() // 2 + 1) if (group >> (2 * i)) & 0b11 == 0b11]


def max_within_group_intersection(s: Block, grouping: GroupPartition) -> int:
    """Max |S & B| over blocks B made of three distinct pairs inside one group.

    Groups with fewer than three pairs contribute nothing.
    """
    best = 0
    for g in grouping.groups:
        pairs = group_pairs(g)
        if len(pairs) < 3:
            continue
        hits = sorted((popcount(s & p) for p in pairs), reverse=True)
        best = max(best, sum(hits[:3]))
    return best


def find_balanced_obstruction(grouping: GroupPartition) -> Block:
    """The two smallest elements of each of exactly three groups."""
    if len(grouping.groups) != 3:
        raise ValueError(f"need exactly 3 groups, got {len(grouping.groups)}")
    s = 0
    for g in grouping.groups:
        elems = block_elements(g)
        if len(elems) < 2:
            raise ValueError("every group needs at least 2 elements")
        s |= (1 << (elems[0] - 1)) | (1 << (elems[1] - 1))
    return s


def balanced_subsets(grouping: GroupPartition) -> Iterator[Block]:
    """Every 6-subset with exactly two elements in each of three groups."""
    import itertools

    per_group = []
    for g in grouping.groups:
        bits = [1 << (e - 1) for e in block_elements(g)]
        per_group.append([a | b for a, b in itertools.combinations(bits, 2)])
    for a, b, c in itertools.product(*per_group):
        yield a | b | c


def default_grouping(n: int = 60) -> GroupPartition:
    return group_elements(DEFAULT_334, n)
