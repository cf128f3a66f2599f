import itertools

import pytest

from tricover.combinatorics import make_block, popcount
from tricover.construction import ConstructionParams, build_family


def all_six_subsets(n):
    return [make_block(c, n) for c in itertools.combinations(range(1, n + 1), 6)]


def naive_max_intersections(blocks, n):
    """Oracle: max |S & B| over blocks, by double loop over all 6-subsets."""
    return {s: max((popcount(s & b) for b in blocks), default=0) for s in all_six_subsets(n)}


@pytest.fixture(scope="session")
def paper_family():
    return build_family()


@pytest.fixture(scope="session")
def small_params():
    return ConstructionParams(3, include_base_blocks=False)
