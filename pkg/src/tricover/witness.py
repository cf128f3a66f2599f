"""Constructive witnesses for the pair-triple family.

For a 6-subset S one half holds at least three of its elements (ties go to
A).  Take the three smallest of them; their pairs, topped up with the
smallest unused pair index when two of them share a pair, give a pair-triple
block containing all three.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from tricover import kernels
from tricover.combinatorics import Block, SubsetRank, binomial, block_elements, intersection_size, popcount, unrank_subset
from tricover.construction import PAPER_PARAMS, ConstructionParams, Half, build_pair_family, make_pair
from tricover.verifier import DEFAULT_CHUNK, run_chunked


@dataclass(frozen=True)
class WitnessResult:
    block: Block
    intersection: int
    side: Half
    pair_indices: tuple[int, int, int]  # 1-based, ascending

    def to_dict(self) -> dict:
        return {
            "block": block_elements(self.block),
            "intersection": self.intersection,
            "side": self.side.value,
            "pair_indices": list(self.pair_indices),
        }


def find_witness(s: Block, params: ConstructionParams = PAPER_PARAMS) -> WitnessResult:
    n = params.n
    if popcount(s) != 6:
        raise ValueError(f"expected a 6-subset, got {block_elements(s)}")
    if s >> n:
        raise ValueError(f"{block_elements(s)} has elements outside [1, {n}]")
    half_size = params.half_size
    in_a = [e for e in block_elements(s) if e <= half_size]
    if len(in_a) >= 3:
        side, chosen, offset = Half.A, in_a[:3], 0
    else:
        side, offset = Half.C, half_size
        chosen = [e for e in block_elements(s) if e > half_size][:3]
    idx = [(e - offset + 1) // 2 for e in chosen]
    if len(set(idx)) == 3:
        triple = idx
    else:
        used = sorted(set(idx))
        r = next(i for i in range(1, params.pairs_per_half + 1) if i not in used)
        triple = used + [r]
    triple = sorted(triple)
    block = 0
    for i in triple:
        block |= make_pair(i, side, params)
    return WitnessResult(block, intersection_size(s, block), side, tuple(triple))


@dataclass
class WitnessSweep:
    checked: int
    failures: int
    first_failure: Block | None
    side_a: int
    checksum: int
    intersection_histogram: list[int]
    elapsed: float = 0.0
    sample: str = "all"
    failing: list[Block] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "sample": self.sample,
            "checked": self.checked,
            "failures": self.failures,
            "first_failure": None if self.first_failure is None else block_elements(self.first_failure),
            "side_a": self.side_a,
            "side_c": self.checked - self.side_a,
            "checksum": f"{self.checksum:016x}",
            "intersection_histogram": self.intersection_histogram,
            "elapsed": self.elapsed,
        }


def witness_sweep(
    family_sorted: Sequence[Block],
    params: ConstructionParams,
    lo: int,
    hi: int,
    workers: int = 1,
    chunk_size: int = DEFAULT_CHUNK,
) -> WitnessSweep:
    """Witness check over colex ranks [lo, hi) against a sorted block list."""
    fam = np.ascontiguousarray(np.array(family_sorted, dtype=np.uint64))
    n, half, binom = params.n, params.half_size, kernels.BINOM
    parts = run_chunked(
        lambda a, b: kernels.witness_range(fam, n, half, lo + a, lo + b, binom),
        hi - lo,
        workers,
        chunk_size,
        "witness",
    )
    first = next((int(p[1]) for p in parts if p[1] >= 0), -1)
    checksum = 0
    for p in parts:
        checksum = (checksum + int(p[3])) & 0xFFFFFFFFFFFFFFFF
    hist = np.sum([p[4] for p in parts], axis=0) if parts else np.zeros(7, dtype=np.int64)
    return WitnessSweep(
        checked=hi - lo,
        failures=sum(int(p[0]) for p in parts),
        first_failure=None if first < 0 else unrank_subset(SubsetRank(first, 6, n)),
        side_a=sum(int(p[2]) for p in parts),
        checksum=checksum,
        intersection_histogram=[int(x) for x in hist],
    )


def pair_triple_members(params: ConstructionParams) -> list[Block]:
    return sorted(build_pair_family(Half.A, params) + build_pair_family(Half.C, params))


def verify_witness_total(
    params: ConstructionParams = PAPER_PARAMS,
    sample: str | tuple[str, int, int] = "all",
    workers: int = 1,
    chunk_size: int = DEFAULT_CHUNK,
) -> WitnessSweep:
    """Check that the witness meets S in >= 3 points and lies in the pair families.

    ``sample`` is ``"all"`` or ``("random", count, seed)``.  Failures are
    counted, never raised.
    """
    members = pair_triple_members(params)
    start = time.perf_counter()
    if sample == "all":
        out = witness_sweep(members, params, 0, binomial(params.n, 6), workers, chunk_size)
    else:
        kind, count, seed = sample
        if kind != "random":
            raise ValueError(f"unknown sample {sample!r}")
        out = _random_sweep(members, params, count, seed)
        out.sample = f"random({count}, seed={seed})"
    out.elapsed = time.perf_counter() - start
    return out


def _random_sweep(members: list[Block], params: ConstructionParams, count: int, seed: int) -> WitnessSweep:
    n = params.n
    rng = np.random.default_rng(seed)
    ranks = rng.integers(0, binomial(n, 6), size=count, dtype=np.int64)
    subsets = kernels.unrank_many(ranks, n, kernels.BINOM)
    blocks, sides = kernels.witness_blocks_for(subsets, params.half_size)
    inter = np.bitwise_count(subsets & blocks).astype(np.int64)
    member = np.isin(blocks, np.array(members, dtype=np.uint64))
    bad = (inter < 3) | ~member
    failing = [int(s) for s in subsets[bad]]
    checksum = int(kernels.mix_sum(ranks, blocks))
    return WitnessSweep(
        checked=count,
        failures=len(failing),
        first_failure=failing[0] if failing else None,
        side_a=int(np.sum(sides == 0)),
        checksum=checksum,
        intersection_histogram=[int(x) for x in np.bincount(inter, minlength=7)],
        failing=failing[:100],
    )
