import numpy as np
import pytest

from tricover.bounds import bounds_summary, counting_lower_bound, per_block_coverage
from tricover.combinatorics import binomial, make_block
from tricover.construction import ConstructionParams
from tricover.combinatorics import popcount
from tricover.kernels import neighborhood

from conftest import all_six_subsets


@pytest.mark.parametrize("n,expected", [(60, 517870), (12, 662), (6, 1)])
def test_per_block_coverage(n, expected):
    assert per_block_coverage(n) == expected


def test_per_block_coverage_brute_force_n12():
    g1 = make_block(range(1, 7))
    assert sum(popcount(s & g1) >= 3 for s in all_six_subsets(12)) == 662


def test_per_block_coverage_rejects_small_n():
    with pytest.raises(ValueError):
        per_block_coverage(5)


@pytest.mark.parametrize("n,expected", [(60, 97), (12, 2), (6, 1)])
def test_counting_lower_bound(n, expected):
    assert counting_lower_bound(n) == expected


def test_lower_bound_is_exact_ceiling():
    for n in range(6, 65):
        lb, N, u = counting_lower_bound(n), per_block_coverage(n), binomial(n, 6)
        assert lb * N >= u > (lb - 1) * N


def scattered_block(n):
    return make_block([1, 2, 4, n - 2, n - 1, n] if n > 6 else range(1, 7), n)


@pytest.mark.parametrize("n", [6, 12, 20, 60])
@pytest.mark.parametrize("make", [lambda n: make_block(range(1, 7)), scattered_block], ids=["G1", "scattered"])
def test_neighborhood_length_matches_formula(n, make):
    nbr = neighborhood(np.uint64(make(n)), n)
    assert len(nbr) == per_block_coverage(n)
    assert len(np.unique(nbr)) == len(nbr)


def test_bounds_summary_paper():
    s = bounds_summary(ConstructionParams())
    assert (s.per_block_coverage, s.universe, s.lower_bound, s.upper_bound_from_construction) == (517870, 50063860, 97, 920)
    assert s.upper_bound_distinct == 910
    assert "97 <= M <= 920" in s.summary()
    assert "97 <= M <= 910" in s.summary()


def test_bounds_summary_small_and_no_base():
    s = bounds_summary(ConstructionParams(3, include_base_blocks=False))
    assert (s.per_block_coverage, s.universe, s.lower_bound, s.upper_bound_from_construction) == (662, 924, 2, 2)
    assert bounds_summary(ConstructionParams(15, include_base_blocks=False)).upper_bound_from_construction == 910


def test_bounds_summary_without_construction():
    s = bounds_summary(n=30)
    assert s.upper_bound_from_construction is None
    assert "no pair-triple construction" in s.summary()
