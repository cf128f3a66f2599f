import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tricover.combinatorics import block_elements, make_block, popcount
from tricover.construction import ConstructionParams, build_family, group_elements
from tricover.partition import (
    DEFAULT_55,
    balanced_subsets,
    check_pigeonhole_55,
    default_grouping,
    distribution,
    find_balanced_obstruction,
    group_pairs,
    max_within_group_intersection,
)
from tricover.verifier import covered_by
from tricover.witness import find_witness

from conftest import all_six_subsets

OBSTRUCTION = make_block([1, 2, 19, 20, 37, 38])


def brute_within_group(s, grouping):
    """Oracle: every union of three pairs {2i-1, 2i} inside one group."""
    best = 0
    for g in grouping.groups:
        pairs = [(1 << (2 * i)) | (1 << (2 * i + 1)) for i in range(32) if (g >> (2 * i)) & 3 == 3]
        for a, b, c in itertools.combinations(pairs, 3):
            best = max(best, popcount(s & (a | b | c)))
    return best


def test_distribution_examples():
    halves = group_elements(DEFAULT_55)
    assert distribution(make_block([1, 2, 3, 31, 32, 33]), halves).counts == (3, 3)
    assert distribution(OBSTRUCTION, default_grouping()).counts == (2, 2, 2)
    assert distribution(OBSTRUCTION, default_grouping()).balanced
    assert distribution(make_block(range(1, 7)), halves).counts == (6, 0)


def test_pigeonhole_exhaustive_n12():
    rep = check_pigeonhole_55(12)
    assert rep.exhaustive and rep.checked == 924
    assert rep.violations == 0 and rep.min_max_count == 3 and rep.holds
    # (3,3) splits: C(6,3)^2
    assert rep.boundary_cases == 400


def test_pigeonhole_sampled_n60():
    rep = check_pigeonhole_55(60, sample=1_000_000, seed=1)
    assert rep.checked == 1_000_000 and rep.violations == 0 and rep.holds
    assert rep.min_max_count == 3


def test_any_two_group_split_forces_three_n12():
    # every split of [12] into two nonempty groups, by brute force
    subsets = all_six_subsets(12)
    for mask in range(1, (1 << 11)):
        other = ((1 << 12) - 1) ^ mask
        assert all(max(popcount(s & mask), popcount(s & other)) >= 3 for s in subsets)


def test_max_within_group_examples():
    three = default_grouping()
    assert max_within_group_intersection(OBSTRUCTION, three) == 2 == brute_within_group(OBSTRUCTION, three)
    assert max_within_group_intersection(make_block(range(1, 7)), three) == 6
    halves = group_elements(DEFAULT_55)
    assert max_within_group_intersection(OBSTRUCTION, halves) >= 3
    assert find_witness(OBSTRUCTION).intersection >= 3


six_sets = st.sets(st.integers(1, 60), min_size=6, max_size=6).map(make_block)
groupings = st.sampled_from([
    default_grouping(),
    group_elements(DEFAULT_55),
    group_elements([[1], [2], range(3, 11)]),
    group_elements([[1, 4, 7], [2, 5], [3, 6, 8, 9, 10]]),
])


@given(six_sets, groupings)
@settings(max_examples=300, deadline=None)
def test_max_within_group_matches_brute_force(s, grouping):
    assert max_within_group_intersection(s, grouping) == brute_within_group(s, grouping)


def test_group_pairs():
    assert [block_elements(p) for p in group_pairs(make_block(range(7, 13)))] == [[7, 8], [9, 10], [11, 12]]


def test_find_balanced_obstruction():
    assert find_balanced_obstruction(default_grouping()) == OBSTRUCTION
    g = group_elements([[1], [2], range(3, 11)])
    assert block_elements(find_balanced_obstruction(g)) == [1, 2, 7, 8, 13, 14]
    with pytest.raises(ValueError):
        find_balanced_obstruction(group_elements(DEFAULT_55))


@pytest.mark.parametrize(
    "n,grouping",
    [(18, [[1], [2], [3]]), (24, [[1], [2], [3, 4]]), (24, [[1, 3], [2], [4]]), (36, [[1, 2], [3, 4], [5, 6]])],
)
def test_balanced_bound_exhaustive_small(n, grouping):
    g = group_elements(grouping, n)
    balanced = [s for s in all_six_subsets(n) if distribution(s, g).counts == (2, 2, 2)]
    assert set(balanced) == set(balanced_subsets(g))
    assert all(max_within_group_intersection(s, g) <= 2 for s in balanced)
    if n % 4:
        return
    # the two-half pair-triple family still covers each of them
    params = ConstructionParams(n // 4, include_base_blocks=False)
    fam = build_family(params)
    assert all(covered_by(fam, s) is not None for s in balanced)


def test_balanced_bound_sampled_n60(paper_family):
    g = default_grouping()
    rng = np.random.default_rng(7)
    elems = [block_elements(x) for x in g.groups]
    for _ in range(20_000):
        s = 0
        for e in elems:
            for x in rng.choice(e, 2, replace=False):
                s |= 1 << (int(x) - 1)
        assert distribution(s, g).balanced
        assert max_within_group_intersection(s, g) <= 2
        assert covered_by(paper_family, s) is not None


def test_obstruction_covered_by_full_family(paper_family):
    block = covered_by(paper_family, OBSTRUCTION)
    assert block is not None and popcount(block & OBSTRUCTION) >= 3
