import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tricover import kernels
from tricover.bounds import per_block_coverage
from tricover.combinatorics import (
    SubsetRank,
    binomial,
    iter_subsets,
    make_block,
    popcount,
    rank_subset,
    unrank_subset,
)
from tricover.construction import ConstructionParams, CoveringFamily, Tag, build_family, write_block_list
from tricover.verifier import covered_by, enumerate_block_neighborhood, rank_chunks, verify_exhaustive

from conftest import all_six_subsets, naive_max_intersections

G1 = make_block(range(1, 7))


def family_of(blocks, n):
    return CoveringFamily(tuple(blocks), (Tag.OTHER,) * len(blocks), n)


def naive_report(blocks, n):
    maxes = naive_max_intersections(blocks, n)
    hist = [0] * 7
    for v in maxes.values():
        hist[v] += 1
    uncovered = sorted((s for s, v in maxes.items() if v < 3), key=lambda s: rank_subset(s, 6, n).rank)
    return hist, uncovered


def test_covered_by(paper_family):
    assert covered_by(paper_family, G1) == G1
    assert covered_by([G1], make_block(range(7, 13))) is None
    assert covered_by([G1], make_block([1, 2, 3, 58, 59, 60])) == G1


def test_neighborhood_examples():
    assert sum(1 for _ in enumerate_block_neighborhood(G1, 12)) == 662
    assert list(enumerate_block_neighborhood(G1, 6)) == [G1]


def test_neighborhood_n60_count():
    assert sum(1 for _ in enumerate_block_neighborhood(G1, 60)) == 517870 == per_block_coverage(60)


@pytest.mark.parametrize("n", [12, 16, 20])
def test_neighborhood_streams_agree(n):
    b = make_block([2, 3, 5, 7, 11, n], n)
    py = list(enumerate_block_neighborhood(b, n))
    oracle = [s for s in all_six_subsets(n) if popcount(s & b) >= 3]
    assert len(py) == len(set(py)) == len(oracle) == per_block_coverage(n)
    assert set(py) == set(oracle) == {int(x) for x in kernels.neighborhood(np.uint64(b), n)}


def test_neighborhood_rejects_non_block():
    with pytest.raises(ValueError):
        list(enumerate_block_neighborhood(make_block([1, 2, 3]), 12))


def test_histogram_matches_naive_small(small_params):
    fam = build_family(small_params)
    hist, uncovered = naive_report(fam.blocks, 12)
    rep = verify_exhaustive(fam, 12, mode="histogram")
    assert rep.max_intersection_histogram == hist
    assert rep.uncovered_count == len(uncovered) == 0
    assert sum(rep.max_intersection_histogram) == rep.universe_size == 924


@st.composite
def random_families(draw):
    n = draw(st.integers(7, 13))
    subsets = all_six_subsets(n)
    idx = draw(st.lists(st.integers(0, len(subsets) - 1), min_size=0, max_size=6))
    return n, [subsets[i] for i in idx]


@given(random_families())
@settings(max_examples=40, deadline=None)
def test_scan_matches_naive_oracle(case):
    n, blocks = case
    hist, uncovered = naive_report(blocks, n)
    fam = family_of(blocks, n)
    full = verify_exhaustive(fam, n, mode="full", chunk_size=97)
    histo = verify_exhaustive(fam, n, mode="histogram", chunk_size=50)
    assert histo.max_intersection_histogram == hist
    assert full.uncovered_count == histo.uncovered_count == len(uncovered) == sum(hist[:3])
    expected_first = uncovered[0] if uncovered else None
    assert full.first_uncovered == histo.first_uncovered == expected_first
    assert full.max_intersection_histogram is None


def test_single_base_block_n60():
    rep = verify_exhaustive(family_of([G1], 60), 60, mode="histogram")
    assert rep.uncovered_count == 50063860 - 517870 == 49545990
    assert rep.max_intersection_histogram == [binomial(6, i) * binomial(54, 6 - i) for i in range(7)]
    first = next(s for s in iter_subsets(60, 6) if popcount(s & G1) < 3)
    assert rep.first_uncovered == first == make_block([1, 2, 7, 8, 9, 10])


@pytest.mark.parametrize("mode", ["full", "histogram"])
def test_worker_count_independence(mode):
    fam = build_family(ConstructionParams(6, include_base_blocks=True))
    fam = fam.without(range(0, 40, 3))
    reports = [verify_exhaustive(fam, 24, mode=mode, workers=w, chunk_size=4099) for w in (1, 4, 8)]
    assert reports[0].uncovered_count > 0
    assert len({r.counts() for r in reports}) == 1


def test_witness_strategy_matches_scan():
    fam = build_family(ConstructionParams(5, include_base_blocks=False))
    a = verify_exhaustive(fam, strategy="witness")
    b = verify_exhaustive(fam, strategy="scan")
    assert a.universe_size == b.universe_size == binomial(20, 6)
    assert a.uncovered_count == b.uncovered_count == 0
    assert (a.strategy, b.strategy) == ("witness", "scan")


def test_witness_strategy_needs_pair_triples():
    with pytest.raises(ValueError):
        verify_exhaustive(family_of([G1], 12), strategy="witness")


def test_verify_from_file(tmp_path, small_params):
    path = tmp_path / "f.txt"
    write_block_list(build_family(small_params), path)
    rep = verify_exhaustive(path)
    assert (rep.n, rep.universe_size, rep.uncovered_count) == (12, 924, 0)


@pytest.mark.parametrize("kwargs", [{"n": 65}, {"n": 5}, {"mode": "bogus"}, {"strategy": "bogus"}])
def test_verify_rejects_bad_arguments(kwargs, small_params):
    with pytest.raises(ValueError):
        verify_exhaustive(build_family(small_params), **kwargs)


def test_rank_chunks():
    assert rank_chunks(10, 4) == [(0, 4), (4, 8), (8, 10)]
    assert rank_chunks(0, 4) == []
    with pytest.raises(ValueError):
        rank_chunks(10, 0)


def test_scan_handles_n64_tail():
    # last 1000 ranks at n = 64 exercise the top bit of the mask
    total = binomial(64, 6)
    blocks = np.array([make_block(range(59, 65))], dtype=np.uint64)
    unc, first, hist = kernels.scan_full(blocks, 64, total - 1000, total, kernels.BINOM)
    subsets = [unrank_subset(SubsetRank(r, 6, 64)) for r in range(total - 1000, total)]
    expected = sum(popcount(s & int(blocks[0])) < 3 for s in subsets)
    assert int(unc) == expected
