"""Explicit 6-uniform families meeting every 6-subset of [n] in at least three points."""

from tricover.combinatorics import (
    SubsetRank,
    binomial,
    block_elements,
    intersection_size,
    johnson_distance,
    make_block,
    next_subset,
    rank_subset,
    unrank_subset,
)
from tricover.construction import (
    ConstructionParams,
    CoveringFamily,
    GroupPartition,
    Tag,
    build_family,
    group_elements,
)

__all__ = [
    "ConstructionParams",
    "CoveringFamily",
    "GroupPartition",
    "SubsetRank",
    "Tag",
    "binomial",
    "block_elements",
    "build_family",
    "group_elements",
    "intersection_size",
    "johnson_distance",
    "make_block",
    "next_subset",
    "rank_subset",
    "unrank_subset",
]
