import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tricover import kernels
from tricover.combinatorics import block_elements, intersection_size, make_block
from tricover.construction import ConstructionParams, Half, Tag, build_family
from tricover.witness import find_witness, pair_triple_members, verify_witness_total

from conftest import all_six_subsets

SMALL = ConstructionParams(3, include_base_blocks=False)


def test_witness_equal_to_block():
    res = find_witness(make_block(range(1, 7)))
    assert (block_elements(res.block), res.intersection, res.side, res.pair_indices) == (
        [1, 2, 3, 4, 5, 6], 6, Half.A, (1, 2, 3))


def test_witness_distinct_pairs():
    res = find_witness(make_block([1, 3, 5, 31, 33, 35]))
    assert res.side is Half.A
    assert res.pair_indices == (1, 2, 3)
    assert block_elements(res.block) == [1, 2, 3, 4, 5, 6]
    assert res.intersection == 3


def test_witness_coincident_pairs_tie_goes_to_a():
    res = find_witness(make_block([1, 2, 3, 40, 41, 42]))
    assert res.side is Half.A
    assert res.pair_indices == (1, 2, 3)
    assert block_elements(res.block) == [1, 2, 3, 4, 5, 6]
    assert res.intersection == 3


def test_witness_c_side_and_second_coincidence():
    # 31 in Q1, 33 and 34 both in Q2: r is the smallest index outside {1, 2}
    res = find_witness(make_block([5, 20, 31, 33, 34, 59]))
    assert res.side is Half.C
    assert res.pair_indices == (1, 2, 3)
    assert block_elements(res.block) == [31, 32, 33, 34, 35, 36]
    # both used pairs include index 1, so r = 2 is skipped
    res = find_witness(make_block([1, 2, 5, 40, 50, 60]))
    assert res.pair_indices == (1, 2, 3)
    res = find_witness(make_block([3, 9, 10, 40, 50, 60]))
    assert res.pair_indices == (1, 2, 5)


def test_witness_rejects_bad_input():
    with pytest.raises(ValueError):
        find_witness(make_block(range(1, 6)))
    with pytest.raises(ValueError):
        find_witness(make_block([1, 2, 3, 4, 5, 13]), SMALL)


@pytest.mark.parametrize("p", [3, 4, 5])
def test_witness_total_small_by_brute_force(p):
    params = ConstructionParams(p, include_base_blocks=False)
    family = set(build_family(params).blocks)
    subsets = all_six_subsets(params.n)
    for s in subsets:
        res = find_witness(s, params)
        assert res.block in family
        assert res.intersection == intersection_size(s, res.block) >= 3
    arr = np.array(subsets, dtype=np.uint64)
    blocks, sides = kernels.witness_blocks_for(arr, params.half_size)
    assert [int(b) for b in blocks] == [find_witness(s, params).block for s in subsets]
    assert [int(x) for x in sides] == [0 if find_witness(s, params).side is Half.A else 1 for s in subsets]


def test_witness_never_uses_base_blocks(paper_family):
    base_only = {b for b, t in zip(paper_family.blocks, paper_family.tags) if t is Tag.BASE}
    pair_blocks = set(pair_triple_members(ConstructionParams()))
    assert base_only <= pair_blocks  # every base block is also a pair triple
    rng = np.random.default_rng(5)
    for _ in range(2000):
        s = make_block(rng.choice(np.arange(1, 61), 6, replace=False).tolist())
        assert find_witness(s).block in pair_blocks


six_sets = st.sets(st.integers(1, 60), min_size=6, max_size=6).map(make_block)


@given(six_sets)
@settings(max_examples=500)
def test_kernel_witness_matches_python(s):
    res = find_witness(s)
    block, side = kernels.witness_blocks_for(np.array([s], dtype=np.uint64), 30)
    assert int(block[0]) == res.block
    assert res.intersection == intersection_size(s, res.block) >= 3
    assert find_witness(s) == res


def test_verify_witness_total_small():
    rep = verify_witness_total(SMALL)
    assert (rep.checked, rep.failures) == (924, 0)
    assert sum(rep.intersection_histogram[:3]) == 0


def test_verify_witness_random_sample():
    rep = verify_witness_total(sample=("random", 1_000_000, 42))
    assert (rep.checked, rep.failures) == (1_000_000, 0)
    again = verify_witness_total(sample=("random", 1_000_000, 42))
    assert again.checksum == rep.checksum


def test_witness_sweep_reports_failures():
    # drop one pair triple from the membership list: every S whose witness it is fails
    from tricover.witness import witness_sweep

    members = pair_triple_members(SMALL)
    rep = witness_sweep(members[1:], SMALL, 0, 924)
    expected = sum(find_witness(s, SMALL).block == members[0] for s in all_six_subsets(12))
    assert rep.failures == expected > 0
